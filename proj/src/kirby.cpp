#include "trisect/kirby.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "trisect/complex.hpp"
#include "trisect/error.hpp"
#include "trisect/layout.hpp"
#include "trisect/slide.hpp"

namespace trisect {

namespace {

int genus_of(const std::vector<Curve>& cs) {
  int g = 0;
  for (const auto& c : cs) g = std::max(g, c.max_pair());
  return g;
}

}  // namespace

int convention_factor(Convention conv) { return conv == Convention::Standard ? -1 : 1; }

int kirby_crossing_sign(const HandlePass& under, const HandlePass& over, Convention conv) {
  return convention_factor(conv) * under.sign * over.sign;
}

FramedLinkDiagram extract_kirby(const TrisectionDiagram& d) {
  if (!d.alpha_beta_standard()) {
    throw RequiresStandardization("(alpha, beta) is not the standard diagram of S^3; split summands first");
  }
  FramedLinkDiagram out;
  out.convention = d.convention;
  out.components = d.gamma.curves;
  const auto& cs = out.components;
  for (std::size_t u = 0; u < cs.size(); ++u) {
    for (std::size_t pi = 0; pi < cs[u].size(); ++pi) {
      const auto& p = cs[u][pi];
      if (p.crossed != Core::Alpha) continue;
      for (std::size_t o = 0; o < cs.size(); ++o) {
        for (std::size_t qi = 0; qi < cs[o].size(); ++qi) {
          const auto& q = cs[o][qi];
          if (q.crossed != Core::Beta || q.pair != p.pair) continue;
          out.crossings.push_back({u, o, p.pair, pi, qi, kirby_crossing_sign(p, q, d.convention)});
        }
      }
    }
  }
  for (const auto& c : cs) out.framings.push_back(framing_formula(c, d.convention));
  return out;
}

int framing_formula(const Curve& c, Convention conv) {
  const auto v = homology_vector(c, c.max_pair());
  int sum = 0;
  for (std::size_t j = 0; j + 1 < v.size(); j += 2) sum += v[j] * v[j + 1];
  return convention_factor(conv) * sum;
}

int parallel_copy_oracle(const Curve& c, Convention conv) {
  std::vector<Curve> base{c};
  std::array<std::vector<Curve>*, 1> groups{&base};
  spread_slots(groups);
  const Curve& k = base[0];
  // Push off to the left: above positive strands, below negative ones.
  std::vector<std::int64_t> slots;
  for (const auto& p : k.word()) slots.push_back(p.slot + (p.sign > 0 ? 1 : -1));
  const Curve copy = k.with_slots(slots);
  if (geometric_intersection(k, copy) != 0 || self_intersections(copy) != self_intersections(k)) {
    throw InternalConsistency("push-off of " + format_curve(c) + " is not parallel");
  }

  // Crossings are read off strand by strand from the joint handle layout.
  const std::array<const Curve*, 2> both{&k, &copy};
  const auto lay = layout_chords(both);
  int sum = 0;
  const int g = k.max_pair();
  for (int j = 1; j <= g; ++j) {
    const auto& unders = lay.handle_strands[2 * static_cast<std::size_t>(j - 1)];
    const auto& overs = lay.handle_strands[2 * static_cast<std::size_t>(j - 1) + 1];
    for (const auto& u : unders) {
      for (const auto& o : overs) {
        if (u.curve == o.curve) continue;
        sum += kirby_crossing_sign((*both[u.curve])[u.pass], (*both[o.curve])[o.pass], conv);
      }
    }
  }
  if (sum % 2 != 0) throw InternalConsistency("odd crossing sum between a curve and its push-off");
  return sum / 2;
}

LinkingMatrix linking_matrix(const FramedLinkDiagram& link) {
  const auto& cs = link.components;
  const std::size_t n = cs.size();
  const int g = genus_of(cs);
  std::vector<std::vector<int>> vec;
  for (const auto& c : cs) vec.push_back(homology_vector(c, g));

  std::vector<std::vector<int>> from_crossings(n, std::vector<int>(n, 0));
  for (const auto& x : link.crossings) {
    if (x.under_component != x.over_component) {
      from_crossings[x.under_component][x.over_component] += x.sign;
      from_crossings[x.over_component][x.under_component] += x.sign;
    } else {
      from_crossings[x.under_component][x.under_component] += x.sign;
    }
  }

  LinkingMatrix q(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    q[i][i] = link.framings.size() == n ? link.framings[i] : framing_formula(cs[i], link.convention);
    if (q[i][i] != from_crossings[i][i]) {
      throw InternalConsistency("framing of component " + std::to_string(i) + " disagrees with its self-crossings");
    }
    for (std::size_t k = i + 1; k < n; ++k) {
      int s = 0;
      for (std::size_t j = 0; j + 1 < vec[i].size(); j += 2) s += vec[i][j] * vec[k][j + 1] + vec[k][j] * vec[i][j + 1];
      if (s % 2 != 0) {
        throw InternalConsistency("linking number of components " + std::to_string(i) + " and " +
                                  std::to_string(k) + " is not an integer");
      }
      s = convention_factor(link.convention) * s / 2;
      if (from_crossings[i][k] % 2 != 0 || from_crossings[i][k] / 2 != s) {
        throw InternalConsistency("linking number of components " + std::to_string(i) + " and " +
                                  std::to_string(k) + " disagrees with the crossing count");
      }
      q[i][k] = q[k][i] = s;
    }
  }
  return q;
}

LinkingMatrix linking_matrix(const TrisectionDiagram& d) { return linking_matrix(extract_kirby(d)); }

bool unknot_by_lemma(const Curve& c) {
  int alpha_points = 0;
  int beta_points = 0;
  for (const auto& p : c.word()) (p.crossed == Core::Alpha ? alpha_points : beta_points)++;
  return alpha_points == 1 || beta_points == 1;
}

bool hopf_pair_detect(std::size_t i, std::size_t k, const FramedLinkDiagram& link) {
  if (i == k || i >= link.components.size() || k >= link.components.size()) return false;
  int i_under = 0;
  int k_under = 0;
  int sign_i = 0;
  int sign_k = 0;
  for (const auto& x : link.crossings) {
    if (x.under_component == i && x.over_component == k) {
      ++i_under;
      sign_i = x.sign;
    } else if (x.under_component == k && x.over_component == i) {
      ++k_under;
      sign_k = x.sign;
    }
  }
  return i_under == 1 && k_under == 1 && sign_i == sign_k && unknot_by_lemma(link.components[i]) &&
         unknot_by_lemma(link.components[k]);
}

RegionCheck region_lemma_check(const TrisectionDiagram& d) {
  RegionCheck out;
  if (!d.alpha_beta_standard()) {
    out.reason = "(alpha, beta) is not standard";
    return out;
  }
  const auto sigma = find_good_position(d.gamma, d.alpha);
  const auto pi = find_good_position(d.gamma, d.beta);
  if (!sigma || !pi) {
    out.reason = std::string("gamma is not in good position with ") + (!sigma ? "alpha" : "beta");
    return out;
  }
  out.applicable = true;
  const std::size_t g = d.gamma.size();
  // Handle pair of the alpha / beta curve paired with gamma_i; 0 when parallel.
  std::vector<int> a_dual(g, 0);
  std::vector<int> b_dual(g, 0);
  auto pair_of = [](const Curve& core) { return reduced_tokens(core).front().pair; };
  for (std::size_t i = 0; i < g; ++i) {
    const Curve& a = d.alpha[(*sigma)[i]];
    const Curve& b = d.beta[(*pi)[i]];
    if (!is_parallel(d.gamma[i], a)) a_dual[i] = pair_of(a);
    if (!is_parallel(d.gamma[i], b)) b_dual[i] = pair_of(b);
  }
  for (std::size_t i = 0; i < g; ++i) {
    for (std::size_t j = 0; j < g; ++j) {
      if (i == j || a_dual[i] == 0 || a_dual[j] == 0) continue;
      if (b_dual[i] != a_dual[j]) continue;
      if (b_dual[j] != a_dual[i]) {
        out.violations.push_back("gamma " + std::to_string(i + 1) + " is dual to alpha " +
                                 std::to_string(a_dual[i]) + " and beta " + std::to_string(b_dual[i]) +
                                 ", but gamma " + std::to_string(j + 1) + " (dual to alpha " +
                                 std::to_string(a_dual[j]) + ") is not dual to beta " + std::to_string(a_dual[i]));
      }
    }
  }
  return out;
}

std::string render_svg(const FramedLinkDiagram& link, int genus) {
  static const std::array<const char*, 8> palette{"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                                  "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};
  std::vector<const Curve*> ptrs;
  for (const auto& c : link.components) ptrs.push_back(&c);
  const double size = 520;
  const double cx = size / 2;
  const double cy = size / 2 - 20;
  const double r = 150;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size + 40
     << "\" viewBox=\"0 0 " << size << ' ' << size + 40 << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"" << r
     << "\" fill=\"#f4f4f4\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n";
  if (ptrs.empty()) {
    os << "</svg>\n";
    return os.str();
  }
  const auto lay = layout_chords(ptrs);
  const double per = static_cast<double>(std::max<std::int64_t>(lay.perimeter, 1));
  auto point = [&](std::int64_t pos, double radius) {
    const double t = 2 * M_PI * (static_cast<double>(pos) + 0.5) / per;
    return std::pair<double, double>{cx + radius * std::cos(t), cy - radius * std::sin(t)};
  };
  char buf[160];
  auto fmt = [&](double x, double y) {
    std::snprintf(buf, sizeof buf, "%.1f %.1f", x, y);
    return std::string(buf);
  };

  // Disk chords.
  for (std::size_t ci = 0; ci < lay.chords.size(); ++ci) {
    const char* col = palette[ci % palette.size()];
    for (const auto& ch : lay.chords[ci]) {
      const auto [x1, y1] = point(ch.from, r);
      const auto [x2, y2] = point(ch.to, r);
      os << "<path d=\"M " << fmt(x1, y1) << " Q " << fmt(cx, cy) << ' ' << fmt(x2, y2) << "\" fill=\"none\" stroke=\""
         << col << "\" stroke-width=\"2\"/>\n";
    }
  }
  // Handle bridges: alpha-crossing strands first, so beta-crossing strands pass over them.
  for (int layer = 0; layer < 2; ++layer) {
    for (std::size_t h = static_cast<std::size_t>(layer); h < lay.handle_strands.size(); h += 2) {
      for (const auto& s : lay.handle_strands[h]) {
        const auto a = lay.entry[s.curve][s.pass];
        const auto b = lay.exit[s.curve][s.pass];
        const auto [x1, y1] = point(a, r);
        const auto [x2, y2] = point(b, r);
        const auto [c1x, c1y] = point(a, r + 110);
        const auto [c2x, c2y] = point(b, r + 110);
        const std::string d = "M " + fmt(x1, y1) + " C " + fmt(c1x, c1y) + ' ' + fmt(c2x, c2y) + ' ' + fmt(x2, y2);
        if (layer == 1) os << "<path d=\"" << d << "\" fill=\"none\" stroke=\"white\" stroke-width=\"7\"/>\n";
        os << "<path d=\"" << d << "\" fill=\"none\" stroke=\"" << palette[s.curve % palette.size()]
           << "\" stroke-width=\"2\"/>\n";
      }
    }
  }
  double y = size + 4;
  for (std::size_t i = 0; i < link.components.size(); ++i) {
    os << "<text x=\"12\" y=\"" << y << "\" font-family=\"monospace\" font-size=\"12\" fill=\""
       << palette[i % palette.size()] << "\">component " << i + 1 << ": framing "
       << (i < link.framings.size() ? link.framings[i] : 0) << "</text>\n";
    y += 14;
  }
  os << "<text x=\"" << size - 12 << "\" y=\"" << size + 4
     << "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"12\">genus " << genus << ", "
     << link.crossings.size() << " crossings</text>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace trisect
