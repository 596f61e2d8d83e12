#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <thread>

#include "CLI11.hpp"
#include "trisect/classify.hpp"
#include "trisect/complex.hpp"
#include "trisect/corpus.hpp"
#include "trisect/error.hpp"
#include "trisect/io.hpp"
#include "trisect/kirby.hpp"
#include "trisect/reduce.hpp"
#include "trisect/report.hpp"

using namespace trisect;

namespace {

enum Exit : int { kOk = 0, kInvalid = 1, kNotGuaranteed = 2, kParse = 3 };

struct Outcome {
  Json report;
  int code = kOk;
};

struct Options {
  std::optional<std::string> convention;
  int jobs = 1;
};

struct Input {
  std::string text;
  TrisectionDiagram diagram;
};

Input load(const std::string& arg, const Options& opt) {
  Input in;
  in.text = read_text(resolve_input(arg));
  in.diagram = parse(in.text);
  if (opt.convention) in.diagram.convention = *opt.convention == "reversed" ? Convention::Reversed : Convention::Standard;
  return in;
}

Json error_payload(const char* kind, const std::exception& e) {
  Json j{{"kind", kind}, {"message", e.what()}};
  if (const auto* pe = dynamic_cast<const ParseError*>(&e)) {
    j["line"] = pe->line();
    j["column"] = pe->column();
  }
  return j;
}

// Runs a command body and turns library errors into an envelope and an exit
// code. `inputs` collects the texts that go into the hash.
Outcome run(std::string_view command, const std::function<Outcome(std::vector<std::string>&)>& body) {
  std::vector<std::string> inputs;
  auto failed = [&](const char* kind, const std::exception& e, int code) {
    Json env = envelope(command, input_hash(inputs), nullptr, {});
    env["error"] = error_payload(kind, e);
    return Outcome{env, code};
  };
  try {
    Outcome out = body(inputs);
    out.report = envelope(command, input_hash(inputs), std::move(out.report["result"]),
                          out.report.value("warnings", std::vector<std::string>{}));
    return out;
  } catch (const ParseError& e) {
    return failed("parse", e, kParse);
  } catch (const InvalidDiagram& e) {
    Outcome o = failed("invalid", e, kInvalid);
    o.report["result"] = to_json(e.report());
    return o;
  } catch (const Stuck& e) {
    Outcome o = failed("stuck", e, kNotGuaranteed);
    o.report["error"]["split_events"] = e.partial().events.size();
    o.report["error"]["remaining_genus"] = e.partial().reduced.genus();
    return o;
  } catch (const Irreducible& e) {
    Outcome o = failed("irreducible", e, kNotGuaranteed);
    o.report["error"]["residual"] = e.partial().residual;
    return o;
  } catch (const RequiresStandardization& e) {
    return failed("requires_standardization", e, kNotGuaranteed);
  } catch (const ClassificationNotGuaranteed& e) {
    return failed("not_guaranteed", e, kNotGuaranteed);
  } catch (const StructuralError& e) {
    return failed("structural", e, kInvalid);
  } catch (const InternalConsistency& e) {
    return failed("internal_consistency", e, kInvalid);
  } catch (const Error& e) {
    return failed("error", e, kInvalid);
  }
}

Outcome result(Json payload, int code = kOk, std::vector<std::string> warnings = {}) {
  return Outcome{Json{{"result", std::move(payload)}, {"warnings", std::move(warnings)}}, code};
}

// Applies `per_file` to every file on up to `jobs` threads; output keeps the
// input order.
int over_files(const std::vector<std::string>& files, int jobs, const std::function<Outcome(const std::string&)>& per_file) {
  std::vector<Outcome> outs(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < files.size(); i = next++) outs[i] = per_file(files[i]);
  };
  const auto n = static_cast<std::size_t>(std::clamp(jobs, 1, 64));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < std::min(n, files.size()); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  int code = kOk;
  for (const auto& o : outs) code = std::max(code, o.code);
  if (outs.size() == 1) {
    std::cout << dump(outs[0].report);
  } else {
    Json all = Json::array();
    for (auto& o : outs) all.push_back(std::move(o.report));
    std::cout << dump(all);
  }
  return code;
}

std::filesystem::path resolve_loop(const std::string& loop_arg, const std::string& diagram_arg) {
  if (std::filesystem::is_regular_file(loop_arg)) return loop_arg;
  const auto loops = corpus_dir() / "loops";
  if (std::filesystem::is_regular_file(loops / loop_arg)) return loops / loop_arg;
  constexpr std::string_view prefix = "corpus:";
  if (diagram_arg.starts_with(prefix)) {
    const auto named = loops / (diagram_arg.substr(prefix.size()) + "_" + loop_arg);
    if (std::filesystem::is_regular_file(named)) return named;
  }
  return loop_arg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trisection diagrams: validation, cut-complex loops, Kirby diagrams and classification"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--convention", opt.convention, "Override the sign convention of the input files")
      ->check(CLI::IsMember({"standard", "reversed"}));
  app.add_option("--jobs", opt.jobs, "Worker threads across input files")->check(CLI::Range(1, 64));

  std::vector<std::string> files;
  std::string file;
  std::string loop_file;
  std::string svg_path;
  int budget = 200;
  int slide_depth = 1;
  int split_depth = 2;
  std::string corpus_name;

  auto* validate = app.add_subcommand("validate", "Check the cut systems and the pairwise Heegaard diagrams");
  validate->add_option("files", files, "Diagram files or corpus:<name>")->required();

  auto* inter = app.add_subcommand("intersections", "Algebraic and geometric intersection table");
  inter->add_option("files", files)->required();

  auto* kirby = app.add_subcommand("kirby", "Framed link induced by gamma");
  kirby->add_option("file", file)->required();
  kirby->add_option("--svg", svg_path, "Also draw the link to this SVG file");

  auto* linking = app.add_subcommand("linking", "Linking matrix with framings on the diagonal");
  linking->add_option("files", files)->required();

  auto* verify = app.add_subcommand("verify-loop", "Check a realization loop and compute its length");
  verify->add_option("file", file)->required();
  verify->add_option("loop", loop_file, "Loop JSON file")->required();

  auto* bound = app.add_subcommand("length-bound", "Search for a short realization loop");
  bound->add_option("file", file)->required();
  bound->add_option("--budget", budget, "Vertices expanded per search tree")->check(CLI::Range(1, 1000000));
  bound->add_option("--slide-depth", slide_depth, "Slide depth of the candidate pool")->check(CLI::Range(0, 3));

  auto* cls = app.add_subcommand("classify", "Connected-sum decomposition with certificate");
  cls->add_option("files", files)->required();
  cls->add_option("--split-depth", split_depth, "Slides tried when splitting off summands")->check(CLI::Range(0, 4));

  auto* corpus = app.add_subcommand("corpus", "Bundled example diagrams");
  corpus->require_subcommand(1);
  auto* clist = corpus->add_subcommand("list", "Names of the bundled diagrams");
  auto* cemit = corpus->add_subcommand("emit", "Print a bundled diagram");
  cemit->add_option("name", corpus_name)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParse;
  }

  if (*validate) {
    return over_files(files, opt.jobs, [&](const std::string& f) {
      return run("validate", [&](std::vector<std::string>& inputs) {
        const auto in = load(f, opt);
        inputs.push_back(in.text);
        const auto rep = validate_diagram(in.diagram);
        Json payload = to_json(rep);
        payload["genus"] = in.diagram.genus();
        if (rep.ok()) payload["k"] = diagram_k(in.diagram);
        return result(payload, rep.ok() ? kOk : kInvalid, rep.warnings);
      });
    });
  }
  if (*inter) {
    return over_files(files, opt.jobs, [&](const std::string& f) {
      return run("intersections", [&](std::vector<std::string>& inputs) {
        const auto in = load(f, opt);
        inputs.push_back(in.text);
        return result(intersection_table(in.diagram));
      });
    });
  }
  if (*kirby) {
    return over_files({file}, 1, [&](const std::string& f) {
      return run("kirby", [&](std::vector<std::string>& inputs) {
        const auto in = load(f, opt);
        inputs.push_back(in.text);
        const auto link = extract_kirby(in.diagram);
        if (!svg_path.empty()) {
          std::ofstream out(svg_path, std::ios::binary);
          out << render_svg(link, in.diagram.genus());
          if (!out) throw Error("cannot write " + svg_path);
        }
        return result(to_json(link));
      });
    });
  }
  if (*linking) {
    return over_files(files, opt.jobs, [&](const std::string& f) {
      return run("linking", [&](std::vector<std::string>& inputs) {
        const auto in = load(f, opt);
        inputs.push_back(in.text);
        return result(to_json(linking_matrix(in.diagram)));
      });
    });
  }
  if (*verify) {
    return over_files({file}, 1, [&](const std::string& f) {
      return run("verify-loop", [&](std::vector<std::string>& inputs) {
        const auto in = load(f, opt);
        inputs.push_back(in.text);
        const auto loop_text = read_text(resolve_loop(loop_file, f));
        inputs.push_back(loop_text);
        const auto rep = verify_realization_loop(parse_loop(loop_text, in.diagram), in.diagram);
        return result(to_json(rep), rep.ok() ? kOk : kInvalid);
      });
    });
  }
  if (*bound) {
    return over_files({file}, 1, [&](const std::string& f) {
      return run("length-bound", [&](std::vector<std::string>& inputs) {
        const auto in = load(f, opt);
        inputs.push_back(in.text);
        const auto b = kt_length_upper_bound(in.diagram, budget, slide_depth);
        Json payload = b ? to_json(*b) : Json{{"bound", nullptr}};
        payload["budget"] = budget;
        payload["slide_depth"] = slide_depth;
        if (!b) return result(payload, kOk, {"no admissible loop found within the budget"});
        return result(payload);
      });
    });
  }
  if (*cls) {
    return over_files(files, opt.jobs, [&](const std::string& f) {
      return run("classify", [&](std::vector<std::string>& inputs) {
        const auto in = load(f, opt);
        inputs.push_back(in.text);
        return result(to_json(classify(in.diagram, split_depth)));
      });
    });
  }
  if (*clist) {
    try {
      for (const auto& n : corpus_names()) std::cout << n << "\n";
      return kOk;
    } catch (const Error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kInvalid;
    }
  }
  if (*cemit) {
    try {
      std::cout << read_text(corpus_file(corpus_name));
      return kOk;
    } catch (const Error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kInvalid;
    }
  }
  return kOk;
}
