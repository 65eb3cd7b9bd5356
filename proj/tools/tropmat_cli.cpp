// tropmat: JSON front end for presentations of transversal valuated matroids.
//
// Exit codes: 0 success / suite passed, 1 suite or theorem failure, 2 input
// or usage error. Errors go to stderr as {"error": {"kind", "message"}}.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tropmat/extension.hpp"
#include "tropmat/json_io.hpp"
#include "tropmat/lab.hpp"
#include "tropmat/presentation.hpp"
#include "tropmat/suites.hpp"

namespace {

using namespace tropmat;
using io::Json;
using io::Labels;

constexpr int kExitFailure = 1;
constexpr int kExitInput = 2;

std::string read_text(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open \"" + path + "\"");
  return std::string(std::istreambuf_iterator<char>(in), {});
}

Json load(const std::string& path) { return io::parse(read_text(path), path); }

bool g_pretty = false;

void print(Json j, const Labels& labels) {
  j["mapping"] = io::mapping_json(labels);
  std::cout << (g_pretty ? j.dump(2) : j.dump()) << '\n';
}

void print_error(const std::string& kind, const std::string& message) {
  Json e = {{"error", {{"kind", kind}, {"message", message}}}};
  std::cerr << e.dump() << '\n';
}

// Matrix plus labels; the same labels gain "*" for extensions.
struct MatrixInput {
  Presentation p;
  Labels labels;
};

MatrixInput load_matrix(const std::string& path) {
  auto m = io::read_matrix(load(path), path);
  if (m.labels.has_star()) throw InputError(path + ": \"*\" is reserved for the extension element");
  return {Presentation(m.value), m.labels};
}

Labels star_labels(const Labels& l) { return l.with_star(); }

// ---------------------------------------------------------------------------
// Subcommands. Each returns the exit code.

int cmd_stiefel(const std::string& path) {
  auto m = io::read_matrix(load(path), path);
  const ValuatedMatroid mu = stiefel(m.value);
  Json j = io::function_json(mu.function(), m.labels);
  j["underlying"] = io::matroid_summary_json(mu.underlying(), m.labels);
  print(j, m.labels);
  return 0;
}

int cmd_check_pluecker(const std::string& path) {
  auto f = io::read_function(load(path), path);
  const auto v = check_valuated(f.value);
  Json j = {{"valuated", v.ok}, {"pluecker", check_pluecker(f.value).ok}};
  j["reason"] = v.reason;
  if (v.pluecker.quad != 0) {
    j["witness"] = {{"S", io::subset_json(v.pluecker.base, f.labels)}, {"quad", io::subset_json(v.pluecker.quad, f.labels)}};
  } else {
    j["witness"] = nullptr;
  }
  print(j, f.labels);
  return 0;
}

int cmd_underlying(const std::string& path) {
  const Json doc = load(path);
  if (doc.is_object() && doc.contains("values")) {
    auto mu = io::read_valuated(doc, path);
    print(io::matroid_summary_json(mu.value.underlying(), mu.labels), mu.labels);
  } else if (doc.is_object() && doc.contains("sets")) {
    auto s = io::read_set_system(doc, path);
    const auto m = transversal_from_system(s.labels.size(), s.value);
    if (!m) throw InputError(path + ": the set system has no transversal of full size");
    Json j = io::matroid_summary_json(*m, s.labels);
    j["maximal_presentation"] = io::set_system_json(maximal_presentation(*m, s.value), s.labels)["sets"];
    print(j, s.labels);
  } else if (doc.is_object() && doc.contains("rows")) {
    auto m = io::read_matrix(doc, path);
    print(io::matroid_summary_json(stiefel(m.value).underlying(), m.labels), m.labels);
  } else {
    throw InputError(path + ": expected a valuated matroid (\"values\"), a set system (\"sets\") or a matrix (\"rows\")");
  }
  return 0;
}

int cmd_dapx(const std::string& path) {
  const auto in = load_matrix(path);
  print(io::decomposition_json(compute_dapx(in.p), in.labels), in.labels);
  return 0;
}

int cmd_decompose(const std::string& path) {
  const auto in = load_matrix(path);
  const auto apx = compute_dapx(in.p);
  Json j = io::decomposition_json(decompose(in.p, apx), in.labels);
  j["dapx"] = io::matrix_json(apx.matrix);
  print(j, in.labels);
  return 0;
}

int cmd_is_minimal(const std::string& path) {
  const auto in = load_matrix(path);
  const Matroid& m = in.p.mu().underlying();
  Json rows = Json::array();
  for (int r = 0; r < in.p.rows(); ++r) {
    const Subset s = in.p.matrix().row(r).support();
    rows.push_back({{"row", r + 1}, {"support", io::subset_json(s, in.labels)}, {"cocircuit", is_cocircuit(m, s)}});
  }
  print({{"minimal", is_minimal(in.p)}, {"rows", rows}}, in.labels);
  return 0;
}

int cmd_minimize(const std::string& path, const std::string& keep) {
  const auto in = load_matrix(path);
  std::optional<int> k;
  if (!keep.empty()) k = in.labels.index(keep);
  const Presentation out = minimize(in.p, k);
  Json j = io::matrix_json(out.matrix());
  j["minimal"] = is_minimal(out);
  print(j, in.labels);
  return 0;
}

int cmd_extend(const std::string& path, const std::string& column) {
  const auto in = load_matrix(path);
  const auto x = io::read_column(load(column), in.p.rows(), column);
  const Labels ext = star_labels(in.labels);
  const auto e = extend(in.p, x);
  Json j = io::function_json(e.values().function(), ext);
  j["x"] = io::vector_json(x);
  print(j, ext);
  return 0;
}

int cmd_collide(const std::string& path, int trials, std::uint64_t seed) {
  const auto in = load_matrix(path);
  const Labels ext = star_labels(in.labels);
  print(io::injectivity_json(extensions_injective(in.p, trials, seed), ext), ext);
  return 0;
}

int cmd_certificates(const std::string& path) {
  const auto in = load_matrix(path);
  const Labels ext = star_labels(in.labels);
  print({{"certificates", io::certificates_json(certificate_bases(in.p), ext)}}, ext);
  return 0;
}

int cmd_meet(const std::string& path, const std::string& xs, const std::string& ys) {
  const auto in = load_matrix(path);
  const auto x = io::read_column(load(xs), in.p.rows(), xs);
  const auto y = io::read_column(load(ys), in.p.rows(), ys);
  const Labels ext = star_labels(in.labels);
  const auto m = meet(in.p, x, y);
  Json j = io::function_json(m.values().function(), ext);
  ExtensionColumn z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = trop_add(x[i], y[i]);
  j["z"] = io::vector_json(z);
  j["below_x"] = poset_leq(m, extend(in.p, x));
  j["below_y"] = poset_leq(m, extend(in.p, y));
  j["x_below_y"] = poset_leq(extend(in.p, x), extend(in.p, y));
  j["y_below_x"] = poset_leq(extend(in.p, y), extend(in.p, x));
  print(j, ext);
  return 0;
}

int cmd_present_min(const std::string& valuated, const std::string& matrix) {
  auto mu = io::read_valuated(load(valuated), valuated);
  if (!mu.labels.has_star()) throw InputError(valuated + ": the extension needs an element labelled \"*\"");
  auto b = io::read_matrix(load(matrix), matrix, true);
  if (b.labels.names() != mu.labels.names()) throw InputError(matrix + ": labels differ from those of " + valuated);
  const auto out = present_extension_minimally(mu.value, Presentation(b.value));
  Json j = {{"a", io::matrix_json(out.a)}, {"x", io::vector_json(out.x)}, {"combined", io::matrix_json(out.combined)}};
  j["minimal"] = is_minimal(Presentation(out.a));
  print(j, mu.labels);
  return 0;
}

struct CorpusOptions {
  std::string file;
  int n = 0, d = 0, count = 0;
  std::uint64_t seed = 0;
  std::string inf_probability, grid;
  CLI::Option *n_opt = nullptr, *d_opt = nullptr, *count_opt = nullptr, *seed_opt = nullptr, *inf_opt = nullptr,
              *grid_opt = nullptr;

  void add_to(CLI::App* app) {
    app->add_option("--corpus", file, "CorpusSpec JSON file; the options below override its fields");
    n_opt = app->add_option("--n", n, "ground set size");
    d_opt = app->add_option("--d", d, "rank");
    count_opt = app->add_option("--count", count, "number of instances");
    seed_opt = app->add_option("--seed", seed, "corpus seed");
    inf_opt = app->add_option("--inf-probability", inf_probability, "probability of an inf entry, e.g. 1/4");
    grid_opt = app->add_option("--grid", grid, "comma-separated finite values, e.g. -1,0,1/2");
  }

  CorpusSpec spec() const {
    Json doc = file.empty() ? Json::object() : load(file);
    if (!doc.is_object()) throw InputError(file + ": expected a CorpusSpec object");
    if (n_opt->count()) doc["n"] = n;
    if (d_opt->count()) doc["d"] = d;
    if (count_opt->count()) doc["count"] = count;
    if (seed_opt->count()) doc["seed"] = seed;
    if (inf_opt->count()) doc["inf_probability"] = inf_probability;
    if (grid_opt->count()) {
      Json g = Json::array();
      std::stringstream ss(grid);
      for (std::string tok; std::getline(ss, tok, ',');) g.push_back(tok);
      doc["value_grid"] = g;
    }
    return io::read_corpus(doc, file.empty() ? "corpus" : file);
  }
};

int cmd_verify(const std::string& suite, const CorpusSpec& spec, unsigned threads) {
  const SuiteReport r = run_suite(suite, spec, threads);
  Json verdicts = Json::array(), failures = Json::array();
  for (const auto& inst : r.instances) {
    if (!inst.verdict.empty()) verdicts.push_back({{"index", inst.index}, {"verdict", inst.verdict}});
    if (!inst.pass) {
      failures.push_back({{"index", inst.index}, {"reason", inst.reason}, {"matrix", io::matrix_json(inst.matrix)}});
    }
  }
  Json j = {{"suite", suite},
            {"corpus", io::corpus_json(spec)},
            {"status", r.ok() ? "PASS" : "FAIL"},
            {"passed", r.passed()},
            {"total", r.instances.size()}};
  if (!verdicts.empty()) j["verdicts"] = verdicts;
  j["failures"] = failures;
  print(j, Labels::numbered(spec.n));
  return r.ok() ? 0 : kExitFailure;
}

int cmd_lab(int n, int d, int trials, std::uint64_t seed, const std::string& pinned) {
  if (!pinned.empty()) {
    if (pinned != "u23") throw InputError("unknown pinned instance \"" + pinned + "\" (expected u23)");
    std::cout << io::lab_report_json(lab_pinned_u23()).dump() << '\n';
    return 0;
  }
  check_lab_size(n, d);
  if (d < 1 || d > n) throw InputError("lab needs 1 <= d <= n");
  if (trials < 0) throw InputError("trials must be non-negative");
  for (int t = 0; t < trials; ++t) std::cout << io::lab_report_json(lab_trial(n, d, seed, t)).dump() << '\n';
  return 0;
}

int cmd_gen(const CorpusSpec& spec) {
  const auto corpus = generate_corpus(spec);
  const Json mapping = io::mapping_json(Labels::numbered(spec.n));
  for (std::size_t k = 0; k < corpus.size(); ++k) {
    Json j = {{"index", k}};
    j.update(io::matrix_json(corpus[k]));
    j["mapping"] = mapping;
    std::cout << j.dump() << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Presentations of transversal valuated matroids and their extensions"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--pretty", g_pretty, "indent JSON output (JSON-lines commands stay compact)");
  int code = 0;
  std::function<int()> run;

  std::string file, file2, file3, keep, suite, pinned;
  int trials = 100, lab_n = 3, lab_d = 2;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  CorpusOptions corpus, gen_corpus;

  auto matrix_cmd = [&](const char* name, const char* help, std::function<int()> body) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("matrix", file, "matrix JSON file (- for stdin)")->required();
    sub->callback([&run, body] { run = body; });
    return sub;
  };

  auto* st = app.add_subcommand("stiefel", "valuated matroid presented by a matrix");
  st->add_option("matrix", file, "matrix JSON file (- for stdin)")->required();
  st->callback([&] { run = [&] { return cmd_stiefel(file); }; });

  auto* cp = app.add_subcommand("check-pluecker", "three-term relations of a function on d-subsets");
  cp->add_option("valuated", file, "valuated JSON file")->required();
  cp->callback([&] { run = [&] { return cmd_check_pluecker(file); }; });

  auto* un = app.add_subcommand("underlying", "underlying matroid of a valuated matroid, set system or matrix");
  un->add_option("input", file, "JSON file")->required();
  un->callback([&] { run = [&] { return cmd_underlying(file); }; });

  matrix_cmd("dapx", "distinguished apex presentation", [&] { return cmd_dapx(file); });
  matrix_cmd("decompose", "rows as apex + shift + raises", [&] { return cmd_decompose(file); });
  matrix_cmd("is-minimal", "minimality test with per-row cocircuit data", [&] { return cmd_is_minimal(file); });
  auto* mn = matrix_cmd("minimize", "a minimal presentation of the same representative",
                        [&] { return cmd_minimize(file, keep); });
  mn->add_option("--keep", keep, "label kept in every row support that has it");

  auto* ex = matrix_cmd("extend", "Stiefel(A|x)", [&] { return cmd_extend(file, file2); });
  ex->add_option("column", file2, "column JSON {\"x\": [...]}")->required();

  auto* co = matrix_cmd("collide", "injectivity verdict: certificates or a collision",
                        [&] { return cmd_collide(file, trials, seed); });
  co->add_option("--trials", trials, "sampled pairs for a minimal presentation")->check(CLI::NonNegativeNumber);
  co->add_option("--seed", seed, "sampling seed");

  matrix_cmd("certificates", "certificate bases of a minimal presentation", [&] { return cmd_certificates(file); });

  auto* me = matrix_cmd("meet", "Stiefel(A|min(x,y)) and order relations", [&] { return cmd_meet(file, file2, file3); });
  me->add_option("x", file2, "first column JSON")->required();
  me->add_option("y", file3, "second column JSON")->required();

  auto* pm = app.add_subcommand("present-min", "(A|x) with A minimal for a given extension and a presentation of it");
  pm->add_option("valuated", file, "extension JSON with an element \"*\"")->required();
  pm->add_option("matrix", file2, "a presentation of the extension, * column included")->required();
  pm->callback([&] { run = [&] { return cmd_present_min(file, file2); }; });

  auto* ve = app.add_subcommand("verify", "run an invariant suite over a seeded corpus");
  ve->add_option("suite", suite, "different | minimal | join | fo-maximal | decompose")->required();
  corpus.add_to(ve);
  ve->add_option("--threads", threads, "worker threads (0: hardware concurrency)");
  ve->callback([&] { run = [&] { return cmd_verify(suite, corpus.spec(), threads); }; });

  auto* la = app.add_subcommand("lab", "search for a min of extensions that is not transversal");
  la->add_option("--n", lab_n, "ground set size (at most 5)");
  la->add_option("--d", lab_d, "rank (at most 3)");
  la->add_option("--trials", trials, "number of trials");
  la->add_option("--seed", seed, "search seed");
  la->add_option("--pinned", pinned, "print a pinned instance instead (u23)");
  la->callback([&] { run = [&] { return cmd_lab(lab_n, lab_d, trials, seed, pinned); }; });

  auto* ge = app.add_subcommand("gen", "print a seeded corpus as JSON lines");
  gen_corpus.add_to(ge);
  ge->callback([&] { run = [&] { return cmd_gen(gen_corpus.spec()); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error("usage", e.what());
    return kExitInput;
  }

  try {
    code = run();
  } catch (const InputError& e) {
    print_error("input", e.what());
    return kExitInput;
  } catch (const TheoremViolation& e) {
    print_error("theorem", e.what());
    return kExitFailure;
  } catch (const std::exception& e) {
    print_error("internal", e.what());
    return kExitFailure;
  }
  return code;
}
