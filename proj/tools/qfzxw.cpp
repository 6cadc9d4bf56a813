// Copyright 2026 The qfzxw Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// qfzxw: evaluate, compare, normalize and rewrite diagram documents.
//
// Exit codes: 0 ok, 1 unequal or check failed, 2 parse error, 3 validation
// error, 4 signature mismatch.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qfzxw/gallery.hpp"
#include "qfzxw/interpreter.hpp"
#include "qfzxw/io.hpp"
#include "qfzxw/normal_form.hpp"
#include "qfzxw/rewrite.hpp"

namespace {

using namespace qfzxw;

enum Exit : int { kOk = 0, kUnequal = 1, kParse = 2, kValidation = 3, kSignature = 4 };

struct Options {
  double tol = 1e-9;
  std::uint64_t seed = 0;
  std::size_t samples = 100;
  std::vector<std::size_t> dims{2, 3, 4, 5};
  std::string output;
  std::string dot;
  std::string format = "text";
  std::vector<std::string> paths;
  std::string gallery;
  std::size_t d = 3;
  std::size_t n = 3;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << text;
}

Diagram load(const std::string& path) {
  Diagram d = parse_diagram(read_file(path));
  require_valid(d);
  return d;
}

void maybe_dot(const Options& o, const Diagram& d) {
  if (!o.dot.empty()) write_text(o.dot, to_dot(d));
}

int cmd_eval(const Options& o) {
  const Diagram d = load(o.paths.at(0));
  maybe_dot(o, d);
  const Tensor t = eval(d);
  write_text(o.output, o.format == "json" ? format_tensor_json(t) : format_tensor_text(t));
  return kOk;
}

int cmd_equal(const Options& o) {
  const Diagram a = load(o.paths.at(0));
  const Diagram b = load(o.paths.at(1));
  const EqualityVerdict v = prove_equal(a, b, o.tol);
  const EqualityCertificate& c = v.certificate;
  std::cout << "lhs: " << format_normal_form(c.lhs) << "\n";
  std::cout << "rhs: " << format_normal_form(c.rhs) << "\n";
  std::cout << "rewrites: " << c.lhs_trace.steps.size() << " lhs, " << c.rhs_trace.steps.size()
            << " rhs\n";
  if (v.equal) {
    std::cout << "equal\n";
    return kOk;
  }
  if (c.first_difference) {
    const std::size_t k = *c.first_difference;
    std::cout << "not equal: first differing coefficient " << k << ": "
              << format_complex(c.lhs.coeffs.at(k)) << " vs " << format_complex(c.rhs.coeffs.at(k))
              << "\n";
  }
  if (c.ratio) std::cout << "proportional: lambda = " << format_complex(*c.ratio) << "\n";
  return kUnequal;
}

int cmd_normalize(const Options& o) {
  const Diagram d = load(o.paths.at(0));
  maybe_dot(o, d);
  write_text(o.output, format_normal_form(normalize(d)) + "\n");
  return kOk;
}

int cmd_simplify(const Options& o) {
  const Diagram d = load(o.paths.at(0));
  const SimplifyResult r = simplify(d);
  maybe_dot(o, r.diagram);
  write_text(o.output, serialize(r.diagram));
  // Keep stdout a clean document when the document goes there.
  std::ostream& log = (o.output.empty() || o.output == "-") ? std::cerr : std::cout;
  log << "trace: " << r.trace.steps.size() << " rewrites in " << r.passes << " passes\n";
  for (const TraceStep& s : r.trace.steps)
    log << "  " << s.site << "  nodes " << s.nodes_before << " -> " << s.nodes_after << "\n";
  return kOk;
}

int cmd_verify_rules(const Options& o) {
  bool ok = true;
  std::printf("%-22s %-8s %9s %9s %14s\n", "rule", "status", "passed", "failed", "max_dev");
  for (const SoundnessReport& r : check_all_rules(o.dims, o.samples, o.seed)) {
    if (!r.mechanized) {
      std::printf("%-22s %s\n", r.rule.c_str(), "not mechanized");
      continue;
    }
    ok = ok && r.ok();
    std::printf("%-22s %-8s %9zu %9zu %14.3e\n", r.rule.c_str(), r.ok() ? "pass" : "FAIL",
                r.passed, r.failed, r.max_deviation);
  }
  return ok ? kOk : kUnequal;
}

int cmd_gallery(const Options& o) {
  const std::string& name = o.gallery;
  const bool by_d = name == "cnot" || name == "triangle";
  GalleryEntry e;
  try {
    e = build_gallery(name, by_d ? o.d : o.n);
  } catch (const std::invalid_argument& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kParse;
  } catch (const std::out_of_range& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kParse;
  }
  maybe_dot(o, e.diagram);
  write_text(o.output, serialize(e.diagram));
  const GalleryCheck c = check_entry(e, o.tol);
  std::ostream& log = (o.output.empty() || o.output == "-") ? std::cerr : std::cout;
  log << (e.comparison == Comparison::exact ? "exact" : "up-to-scalar") << ": "
      << (c.pass ? "pass" : "FAIL");
  if (c.lambda && e.comparison == Comparison::up_to_scalar)
    log << " (lambda = " << format_complex(*c.lambda) << ")";
  log << ", max deviation " << c.deviation << "\n";
  return c.pass ? kOk : kUnequal;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"qfzxw: qufinite ZXW diagrams"};
  app.require_subcommand(1);
  app.add_option("--tol", o.tol, "Comparison tolerance")->capture_default_str();
  app.add_option("--seed", o.seed, "Random seed")->capture_default_str();
  app.add_option("--samples", o.samples, "Samples per rule")->capture_default_str();
  app.add_option("--dims", o.dims, "Dimension choices, comma separated")->delimiter(',');
  app.add_option("--output", o.output, "Output file (default stdout)");
  app.add_option("--dot", o.dot, "Write a Graphviz rendering to this file");
  app.add_option("--format", o.format, "Tensor format")->check(CLI::IsMember({"text", "json"}));

  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a diagram to its tensor");
  eval_cmd->add_option("path", o.paths, "Diagram document")->required()->expected(1);
  auto* equal_cmd = app.add_subcommand("equal", "Decide equality of two diagrams");
  equal_cmd->add_option("paths", o.paths, "Two diagram documents")->required()->expected(2);
  auto* normalize_cmd = app.add_subcommand("normalize", "Print the normal form");
  normalize_cmd->add_option("path", o.paths, "Diagram document")->required()->expected(1);
  auto* simplify_cmd = app.add_subcommand("simplify", "Rewrite to a fixpoint");
  simplify_cmd->add_option("path", o.paths, "Diagram document")->required()->expected(1);
  app.add_subcommand("verify-rules", "Check every rewrite rule numerically");
  auto* gallery_cmd = app.add_subcommand("gallery", "Emit a gallery diagram and check its oracle");
  gallery_cmd->add_option("name", o.gallery, "qft | cnot | symmetrizer | triangle")->required();
  gallery_cmd->add_option("--d", o.d, "Dimension for cnot and triangle")->capture_default_str();
  gallery_cmd->add_option("--n", o.n, "Qubit count for qft and symmetrizer")->capture_default_str();
  // Global flags are accepted after the subcommand too.
  for (auto* sub : app.get_subcommands([](CLI::App*) { return true; })) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParse;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    if (cmd == "eval") return cmd_eval(o);
    if (cmd == "equal") return cmd_equal(o);
    if (cmd == "normalize") return cmd_normalize(o);
    if (cmd == "simplify") return cmd_simplify(o);
    if (cmd == "verify-rules") return cmd_verify_rules(o);
    return cmd_gallery(o);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kValidation;
  } catch (const SignatureError& e) {
    std::cerr << "signature error: " << e.what() << "\n";
    return kSignature;
  }
}
