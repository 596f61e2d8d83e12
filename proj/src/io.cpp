#include "trisect/io.hpp"

#include <cctype>
#include <charconv>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "trisect/error.hpp"
#include "trisect/slide.hpp"

namespace trisect {

namespace {

constexpr std::array<SystemId, 3> kSystems{SystemId::Alpha, SystemId::Beta, SystemId::Gamma};
constexpr int kMaxGenus = 64;

struct Line {
  std::string_view text;
  int number = 0;
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> out;
  int number = 1;
  std::size_t start = 0;
  while (start < text.size()) {
    const std::size_t end = text.find('\n', start);
    const std::size_t stop = end == std::string_view::npos ? text.size() : end;
    out.push_back({text.substr(start, stop - start), number++});
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

bool is_space(char c) { return c == ' ' || c == '\t'; }

struct Cursor {
  Line line;
  std::size_t pos = 0;

  int column() const { return static_cast<int>(pos) + 1; }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, line.number, column()); }
  void skip_space() {
    while (pos < line.text.size() && is_space(line.text[pos])) ++pos;
  }
  bool at_end() const { return pos >= line.text.size(); }
  std::string_view word() {
    const std::size_t start = pos;
    while (pos < line.text.size() && !is_space(line.text[pos])) ++pos;
    return line.text.substr(start, pos - start);
  }
};

int parse_int(std::string_view s, const Cursor& at, const char* what) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty() || v < 0) at.fail(std::string("bad ") + what);
  return v;
}

struct SlotSite {
  int line = 0;
  int column = 0;
};

HandlePass parse_token(std::string_view tok, int genus, const Cursor& at, bool& explicit_slot) {
  auto bad = [&] { at.fail("bad token '" + std::string(tok) + "'"); };
  if (tok.size() < 3 || (tok[0] != 'A' && tok[0] != 'B')) bad();
  HandlePass p;
  p.crossed = tok[0] == 'A' ? Core::Alpha : Core::Beta;
  std::size_t i = 1;
  while (i < tok.size() && std::isdigit(static_cast<unsigned char>(tok[i]))) ++i;
  if (i == 1 || i >= tok.size()) bad();
  p.pair = 0;
  const auto [ptr, ec] = std::from_chars(tok.data() + 1, tok.data() + i, p.pair);
  if (ec != std::errc() || ptr != tok.data() + i) bad();
  if (tok[i] != '+' && tok[i] != '-') bad();
  p.sign = tok[i] == '+' ? 1 : -1;
  ++i;
  explicit_slot = false;
  if (i < tok.size()) {
    if (tok[i] != '@' || i + 1 >= tok.size()) bad();
    std::int64_t slot = 0;
    const auto [sp, sec] = std::from_chars(tok.data() + i + 1, tok.data() + tok.size(), slot);
    if (sec != std::errc() || sp != tok.data() + tok.size() || slot < 0 || slot > (std::int64_t{1} << 30)) bad();
    p.slot = slot * kSlotStride;
    explicit_slot = true;
  }
  if (p.pair < 1 || p.pair > genus) {
    at.fail("handle pair " + std::to_string(p.pair) + " out of range for genus " + std::to_string(genus));
  }
  return p;
}

bool is_name(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

bool equals_cores(const CutSystem& cs, Core which, int genus) {
  const auto std_cs = standard_system(which, genus);
  if (cs.size() != std_cs.size()) return false;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (!(cs[i] == std_cs[i])) return false;
    for (std::size_t k = 0; k < cs[i].size(); ++k) {
      if (cs[i][k].slot != std_cs[i][k].slot) return false;
    }
  }
  return true;
}

}  // namespace

Curve parse_curve(std::string_view text, int genus) {
  Cursor cur{{text, 1}, 0};
  std::vector<HandlePass> word;
  for (;;) {
    cur.skip_space();
    if (cur.at_end()) break;
    Cursor at = cur;
    const auto tok = cur.word();
    bool explicit_slot = false;
    word.push_back(parse_token(tok, genus, at, explicit_slot));
  }
  if (word.empty()) cur.fail("empty curve");
  return Curve(std::move(word));
}

DiagramFile parse_file(std::string_view text) {
  auto lines = split_lines(text);
  std::size_t li = 0;
  auto next = [&](const char* expected) -> Cursor {
    if (li >= lines.size()) {
      const int n = lines.empty() ? 1 : lines.back().number + 1;
      throw ParseError(std::string("unexpected end of input, expected ") + expected, n, 1);
    }
    return Cursor{lines[li++], 0};
  };

  for (const auto& l : lines) {
    for (std::size_t i = 0; i < l.text.size(); ++i) {
      const auto c = static_cast<unsigned char>(l.text[i]);
      if (c != '\t' && (c < 0x20 || c >= 0x7f)) {
        throw ParseError("unexpected character", l.number, static_cast<int>(i) + 1);
      }
    }
  }

  DiagramFile f;
  {
    Cursor c = next("header");
    if (c.line.text != "trisection v1") c.fail("expected 'trisection v1'");
  }
  int genus = 0;
  {
    Cursor c = next("genus");
    if (c.word() != "genus") c.fail("expected 'genus <g>'");
    c.skip_space();
    Cursor at = c;
    genus = parse_int(c.word(), at, "genus");
    if (genus > kMaxGenus) at.fail("genus too large");
    c.skip_space();
    if (!c.at_end()) c.fail("unexpected text after genus");
  }
  f.diagram.model.genus = genus;
  {
    Cursor c = next("convention");
    if (c.word() != "convention") c.fail("expected 'convention standard|reversed'");
    c.skip_space();
    Cursor at = c;
    const auto v = c.word();
    if (v == "standard") {
      f.diagram.convention = Convention::Standard;
    } else if (v == "reversed") {
      f.diagram.convention = Convention::Reversed;
    } else {
      at.fail("unknown convention '" + std::string(v) + "'");
    }
    c.skip_space();
    if (!c.at_end()) c.fail("unexpected text after convention");
  }

  std::map<std::pair<int, int>, std::map<std::int64_t, SlotSite>> used;  // handle -> explicit slots
  auto claim = [&](const HandlePass& p, SlotSite site) {
    auto& slots = used[{p.crossed == Core::Alpha ? 0 : 1, p.pair}];
    if (!slots.emplace(p.slot, site).second) {
      throw ParseError("duplicate slot " + std::to_string(p.slot / kSlotStride) + " in handle " +
                           format_pass(p, false).substr(0, format_pass(p, false).size() - 1),
                       site.line, site.column);
    }
  };
  std::set<std::string> all_names;

  for (std::size_t s = 0; s < 3; ++s) {
    const std::string name = system_name(kSystems[s]);
    Cursor c = next((name + ":").c_str());
    if (c.word() != name + ":") c.fail("expected '" + name + ":'");
    c.skip_space();
    auto& cs = f.diagram.system(kSystems[s]);
    if (!c.at_end()) {
      Cursor at = c;
      if (c.word() != "std") at.fail("expected 'std' or end of line");
      c.skip_space();
      if (!c.at_end()) c.fail("unexpected text after 'std'");
      if (s == 2) at.fail("gamma has no standard shorthand");
      f.shorthand[s] = true;
      cs = standard_system(s == 0 ? Core::Alpha : Core::Beta, genus);
      for (const auto& curve : cs.curves) {
        for (const auto& p : curve.word()) claim(p, {at.line.number, at.column()});
      }
      continue;
    }
    for (int k = 0; k < genus; ++k) {
      Cursor line = next("curve");
      line.skip_space();
      if (line.pos == 0) {
        line.fail(name + " has " + std::to_string(k) + " curves but the genus is " + std::to_string(genus));
      }
      Cursor at_name = line;
      std::size_t start = line.pos;
      while (!line.at_end() && !is_space(line.line.text[line.pos]) && line.line.text[line.pos] != '=') ++line.pos;
      const auto cname = line.line.text.substr(start, line.pos - start);
      if (!is_name(cname)) at_name.fail("bad curve name");
      if (!all_names.insert(std::string(cname)).second) at_name.fail("duplicate curve name '" + std::string(cname) + "'");
      line.skip_space();
      if (line.at_end() || line.line.text[line.pos] != '=') line.fail("expected '='");
      ++line.pos;
      std::vector<HandlePass> word;
      std::vector<bool> flags;
      for (;;) {
        line.skip_space();
        if (line.at_end()) break;
        Cursor at = line;
        const auto tok = line.word();
        bool explicit_slot = false;
        const auto p = parse_token(tok, genus, at, explicit_slot);
        if (explicit_slot) claim(p, {at.line.number, at.column()});
        word.push_back(p);
        flags.push_back(explicit_slot);
      }
      if (word.empty()) line.fail("empty curve");
      cs.curves.emplace_back(std::move(word));
      f.names[s].emplace_back(cname);
      f.slots[s].push_back(std::move(flags));
    }
  }
  if (li < lines.size()) {
    Cursor c{lines[li], 0};
    c.fail("unexpected content; the genus is " + std::to_string(genus));
  }
  return f;
}

TrisectionDiagram parse(std::string_view text) { return parse_file(text).diagram; }

std::string serialize(const DiagramFile& f) {
  const auto& d = f.diagram;
  std::ostringstream os;
  os << "trisection v1\n";
  os << "genus " << d.genus() << "\n";
  os << "convention " << (d.convention == Convention::Standard ? "standard" : "reversed") << "\n";
  for (std::size_t s = 0; s < 3; ++s) {
    os << system_name(kSystems[s]) << ":";
    if (f.shorthand[s]) {
      os << " std\n";
      continue;
    }
    os << "\n";
    const auto& cs = d.system(kSystems[s]);
    for (std::size_t i = 0; i < cs.size(); ++i) {
      os << "  " << f.names[s][i] << " =";
      for (std::size_t k = 0; k < cs[i].size(); ++k) {
        const bool with_slot = f.slots[s][i][k] || cs[i][k].slot != 0;
        os << " " << format_pass(cs[i][k], with_slot);
      }
      os << "\n";
    }
  }
  return os.str();
}

std::string serialize(const TrisectionDiagram& d) {
  DiagramFile f;
  f.diagram = d;
  bool spaced = true;
  for (auto id : kSystems) {
    for (const auto& c : d.system(id).curves) {
      for (const auto& p : c.word()) spaced = spaced && p.slot % kSlotStride == 0;
    }
  }
  if (!spaced) {
    std::array<std::vector<Curve>*, 3> groups{&f.diagram.alpha.curves, &f.diagram.beta.curves,
                                              &f.diagram.gamma.curves};
    spread_slots(groups);
  }
  const char* prefix[3] = {"a", "b", "g"};
  for (std::size_t s = 0; s < 3; ++s) {
    const auto& cs = f.diagram.system(kSystems[s]);
    f.shorthand[s] = s < 2 && equals_cores(cs, s == 0 ? Core::Alpha : Core::Beta, d.genus());
    for (std::size_t i = 0; i < cs.size(); ++i) {
      f.names[s].push_back(prefix[s] + std::to_string(i + 1));
      f.slots[s].emplace_back(cs[i].size(), true);
    }
  }
  return serialize(f);
}

namespace {

using nlohmann::json;

const std::array<std::pair<const char*, std::size_t LoopMarkers::*>, 9> kMarkerFields{{
    {"alpha", &LoopMarkers::alpha},
    {"beta", &LoopMarkers::beta},
    {"gamma", &LoopMarkers::gamma},
    {"alpha_beta", &LoopMarkers::alpha_beta},
    {"alpha_gamma", &LoopMarkers::alpha_gamma},
    {"beta_alpha", &LoopMarkers::beta_alpha},
    {"beta_gamma", &LoopMarkers::beta_gamma},
    {"gamma_alpha", &LoopMarkers::gamma_alpha},
    {"gamma_beta", &LoopMarkers::gamma_beta},
}};

[[noreturn]] void loop_error(const std::string& what) { throw ParseError("loop file: " + what, 1, 1); }

}  // namespace

RealizationLoopCandidate parse_loop(std::string_view json_text, const TrisectionDiagram& d) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    // byte offset -> line/column
    std::size_t off = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, json_text.size());
    int line = 1;
    int col = 1;
    for (std::size_t i = 0; i < off; ++i) {
      if (json_text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("loop file: malformed JSON", line, col);
  }
  if (!j.is_object()) loop_error("expected an object");
  for (const auto& [key, _] : j.items()) {
    if (key != "vertices" && key != "markers") loop_error("unknown field '" + key + "'");
  }
  if (!j.contains("vertices") || !j["vertices"].is_array()) loop_error("'vertices' must be an array");
  if (!j.contains("markers") || !j["markers"].is_object()) loop_error("'markers' must be an object");

  RealizationLoopCandidate loop;
  for (const auto& v : j["vertices"]) {
    if (v.is_string()) {
      const auto name = v.get<std::string>();
      bool found = false;
      for (auto id : kSystems) {
        if (name == system_name(id)) {
          loop.vertices.push_back(d.system(id));
          found = true;
        }
      }
      if (!found) loop_error("unknown system '" + name + "'");
    } else if (v.is_array()) {
      CutSystem cs;
      for (const auto& w : v) {
        if (!w.is_string()) loop_error("curve words must be strings");
        try {
          cs.curves.push_back(parse_curve(w.get<std::string>(), d.genus()));
        } catch (const ParseError& e) {
          loop_error(std::string("vertex ") + std::to_string(loop.vertices.size()) + ": " + e.what());
        }
      }
      loop.vertices.push_back(std::move(cs));
    } else {
      loop_error("a vertex is a system name or an array of curve words");
    }
  }
  const auto& m = j["markers"];
  for (const auto& [key, _] : m.items()) {
    bool known = false;
    for (const auto& [name, field] : kMarkerFields) known = known || key == name;
    if (!known) loop_error("unknown marker '" + key + "'");
  }
  for (const auto& [name, field] : kMarkerFields) {
    if (!m.contains(name) || !m[name].is_number_unsigned()) loop_error(std::string("marker '") + name + "' missing");
    loop.markers.*field = m[name].get<std::size_t>();
  }
  return loop;
}

std::string serialize_loop(const RealizationLoopCandidate& loop) {
  auto copy = loop;
  bool spaced = true;
  for (const auto& v : copy.vertices) {
    for (const auto& c : v.curves) {
      for (const auto& p : c.word()) spaced = spaced && p.slot % kSlotStride == 0;
    }
  }
  if (!spaced) {
    std::vector<std::vector<Curve>*> groups;
    for (auto& v : copy.vertices) groups.push_back(&v.curves);
    spread_slots(groups);
  }
  json out;
  out["vertices"] = json::array();
  for (const auto& v : copy.vertices) {
    json words = json::array();
    for (const auto& c : v.curves) words.push_back(format_curve(c, true));
    out["vertices"].push_back(words);
  }
  json m = json::object();
  for (const auto& [name, field] : kMarkerFields) m[name] = loop.markers.*field;
  out["markers"] = m;
  return out.dump(2) + "\n";
}

}  // namespace trisect
