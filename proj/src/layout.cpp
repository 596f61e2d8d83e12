#include "trisect/layout.hpp"

#include <algorithm>
#include <tuple>

namespace trisect {

DiskLayout layout_chords(std::span<const Curve* const> curves) {
  DiskLayout out;
  int genus = 0;
  for (const Curve* c : curves) genus = std::max(genus, c->max_pair());

  out.handle_strands.resize(2 * static_cast<std::size_t>(genus));
  for (std::size_t ci = 0; ci < curves.size(); ++ci) {
    const auto word = curves[ci]->word();
    for (std::size_t pi = 0; pi < word.size(); ++pi) {
      out.handle_strands[handle_index(word[pi])].push_back({ci, pi});
    }
  }
  for (auto& strands : out.handle_strands) {
    std::sort(strands.begin(), strands.end(), [&](const StrandRef& x, const StrandRef& y) {
      const auto kx = (*curves[x.curve])[x.pass].slot;
      const auto ky = (*curves[y.curve])[y.pass].slot;
      return std::tie(kx, x.curve, x.pass) < std::tie(ky, y.curve, y.pass);
    });
  }

  // Offsets of the minus and plus foot of every handle.
  std::vector<std::int64_t> minus_off(out.handle_strands.size());
  std::vector<std::int64_t> plus_off(out.handle_strands.size());
  std::int64_t base = 0;
  for (int j = 0; j < genus; ++j) {
    const std::size_t h_alpha = 2 * static_cast<std::size_t>(j) + 1;  // carries beta_j crossings
    const std::size_t h_beta = 2 * static_cast<std::size_t>(j);       // carries alpha_j crossings
    const auto n_alpha = static_cast<std::int64_t>(out.handle_strands[h_alpha].size());
    const auto n_beta = static_cast<std::int64_t>(out.handle_strands[h_beta].size());
    minus_off[h_alpha] = base;
    base += n_alpha;
    minus_off[h_beta] = base;
    base += n_beta;
    plus_off[h_alpha] = base;
    base += n_alpha;
    plus_off[h_beta] = base;
    base += n_beta;
  }
  out.perimeter = base;

  out.entry.resize(curves.size());
  out.exit.resize(curves.size());
  for (std::size_t ci = 0; ci < curves.size(); ++ci) {
    out.entry[ci].resize(curves[ci]->size());
    out.exit[ci].resize(curves[ci]->size());
  }
  for (std::size_t h = 0; h < out.handle_strands.size(); ++h) {
    const auto& strands = out.handle_strands[h];
    const auto n = static_cast<std::int64_t>(strands.size());
    for (std::int64_t r = 0; r < n; ++r) {
      const StrandRef s = strands[static_cast<std::size_t>(r)];
      const std::int64_t at_minus = minus_off[h] + r;
      const std::int64_t at_plus = plus_off[h] + (n - 1 - r);
      const bool forward = (*curves[s.curve])[s.pass].sign > 0;
      out.entry[s.curve][s.pass] = forward ? at_minus : at_plus;
      out.exit[s.curve][s.pass] = forward ? at_plus : at_minus;
    }
  }

  out.chords.resize(curves.size());
  for (std::size_t ci = 0; ci < curves.size(); ++ci) {
    const std::size_t n = curves[ci]->size();
    out.chords[ci].reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
      out.chords[ci].push_back({out.exit[ci][k], out.entry[ci][(k + 1) % n]});
    }
  }
  return out;
}

bool chords_cross(const Chord& a, const Chord& b) {
  const auto lo = std::min(a.from, a.to);
  const auto hi = std::max(a.from, a.to);
  const bool b1 = lo < b.from && b.from < hi;
  const bool b2 = lo < b.to && b.to < hi;
  return b1 != b2;
}

bool in_ccw_open_arc(std::int64_t x, std::int64_t from, std::int64_t to, std::int64_t perimeter) {
  const auto dx = ((x - from) % perimeter + perimeter) % perimeter;
  const auto dt = ((to - from) % perimeter + perimeter) % perimeter;
  return dx > 0 && dx < dt;
}

int crossing_sign(const Chord& a, const Chord& b, std::int64_t perimeter) {
  return in_ccw_open_arc(b.to, a.from, a.to, perimeter) ? 1 : -1;
}

}  // namespace trisect
