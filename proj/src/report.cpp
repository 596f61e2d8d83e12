#include "trisect/report.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstdio>

#include "trisect/error.hpp"
#include "trisect/version.hpp"

namespace trisect {

namespace {

constexpr std::array<SystemId, 3> kSystems{SystemId::Alpha, SystemId::Beta, SystemId::Gamma};

Json words(const CutSystem& cs) {
  Json out = Json::array();
  for (const auto& c : cs.curves) out.push_back(format_curve(c, false));
  return out;
}

}  // namespace

Json to_json(const ValidationReport& r) {
  Json issues = Json::array();
  for (const auto& i : r.issues) issues.push_back({{"kind", i.kind}, {"curves", i.curves}, {"detail", i.detail}});
  return {{"valid", r.ok()}, {"issues", issues}, {"warnings", r.warnings}};
}

Json to_json(const FramedLinkDiagram& link) {
  Json comps = Json::array();
  for (std::size_t i = 0; i < link.components.size(); ++i) {
    comps.push_back({{"index", i},
                     {"word", format_curve(link.components[i], false)},
                     {"framing", link.framings[i]},
                     {"certified_unknot", unknot_by_lemma(link.components[i])}});
  }
  Json xs = Json::array();
  for (const auto& x : link.crossings) {
    xs.push_back({{"under", x.under_component},
                  {"over", x.over_component},
                  {"handle_pair", x.handle_pair},
                  {"under_pass", x.under_pass},
                  {"over_pass", x.over_pass},
                  {"sign", x.sign}});
  }
  Json hopf = Json::array();
  for (std::size_t i = 0; i < link.components.size(); ++i) {
    for (std::size_t k = i + 1; k < link.components.size(); ++k) {
      if (hopf_pair_detect(i, k, link)) hopf.push_back({i, k});
    }
  }
  return {{"convention", link.convention == Convention::Standard ? "standard" : "reversed"},
          {"components", comps},
          {"crossings", xs},
          {"hopf_pairs", hopf}};
}

Json to_json(const LinkingMatrix& q) {
  Json rows = Json::array();
  for (const auto& row : q) rows.push_back(row);
  return rows;
}

Json to_json(const LoopReport& r) {
  Json edges = Json::array();
  for (auto e : r.edges) edges.push_back(edge_kind_name(e));
  Json wit = Json::array();
  for (const auto& w : r.witnesses) {
    Json x{{"condition", w.condition}, {"passed", w.passed}, {"detail", w.detail}};
    x["edge"] = w.edge ? Json(*w.edge) : Json(nullptr);
    wit.push_back(x);
  }
  return {{"ok", r.ok()},   {"l", r.l},         {"k", r.k},           {"L", r.L},
          {"edges", edges}, {"direction", r.direction}, {"witnesses", wit}};
}

Json to_json(const LengthBound& b) {
  Json verts = Json::array();
  for (const auto& v : b.loop.vertices) verts.push_back(words(v));
  return {{"bound", b.bound}, {"vertices", verts}, {"report", to_json(b.report)}};
}

Json to_json(const Decomposition& d) {
  Json cert = Json::array();
  for (const auto& s : d.certificate) cert.push_back({{"kind", s.kind}, {"detail", s.detail}});
  return {{"p", d.p},
          {"q", d.q},
          {"r", d.r},
          {"s", d.s},
          {"s4_trivial", d.s4_trivial},
          {"name", decomposition_name(d)},
          {"certificate", cert}};
}

Json intersection_table(const TrisectionDiagram& d) {
  Json curves = Json::array();
  std::vector<const Curve*> all;
  for (auto id : kSystems) {
    const auto& cs = d.system(id);
    for (std::size_t i = 0; i < cs.size(); ++i) {
      curves.push_back({{"system", system_name(id)}, {"index", i}, {"word", format_curve(cs[i], false)}});
      all.push_back(&cs[i]);
    }
  }
  Json alg = Json::array();
  Json geo = Json::array();
  for (const Curve* a : all) {
    std::vector<int> ra;
    std::vector<int> rg;
    for (const Curve* b : all) {
      ra.push_back(a == b ? 0 : algebraic_intersection(*a, *b));
      rg.push_back(a == b ? 0 : geometric_intersection(*a, *b));
    }
    alg.push_back(ra);
    geo.push_back(rg);
  }
  return {{"curves", curves}, {"algebraic", alg}, {"geometric", geo}};
}

std::string input_hash(const std::vector<std::string>& inputs) {
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (ctx == nullptr || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1) {
    EVP_MD_CTX_free(ctx);
    throw Error("SHA-256 unavailable");
  }
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (i) EVP_DigestUpdate(ctx, "", 1);
    EVP_DigestUpdate(ctx, inputs[i].data(), inputs[i].size());
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, md.data(), &len);
  EVP_MD_CTX_free(ctx);
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) {
    char buf[3];
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

Json envelope(std::string_view command, const std::string& hash, Json result, std::vector<std::string> warnings) {
  return {{"tool", "trisect"},
          {"version", kVersion},
          {"command", std::string(command)},
          {"input_hash", "sha256:" + hash},
          {"result", std::move(result)},
          {"warnings", std::move(warnings)}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace trisect
