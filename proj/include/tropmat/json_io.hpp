#pragma once

// JSON wire formats. Scalars travel as strings ("p/q", "inf"; integers are
// also accepted as JSON numbers). Ground elements carry external labels that
// are mapped to internal indices; "*" is the extension element and always
// sits last internally. Every top-level output carries the mapping table.

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "tropmat/extension.hpp"
#include "tropmat/lab.hpp"
#include "tropmat/matroid.hpp"
#include "tropmat/presentation.hpp"
#include "tropmat/random.hpp"
#include "tropmat/valuated.hpp"

namespace tropmat::io {

using Json = nlohmann::ordered_json;

inline const std::string kStar = "*";

class Labels {
 public:
  Labels() = default;
  explicit Labels(std::vector<std::string> names) : names_(std::move(names)) {
    check_ground_size(size());
    std::set<std::string> seen;
    for (std::size_t k = 0; k < names_.size(); ++k) {
      const auto& s = names_[k];
      if (s.empty()) throw InputError("empty element label");
      if (s.find(',') != std::string::npos) throw InputError("element label \"" + s + "\" contains a comma");
      if (!seen.insert(s).second) throw InputError("duplicate element label \"" + s + "\"");
      if (s == kStar && k + 1 != names_.size()) throw InputError("the extension element * must be last");
    }
  }

  /// "1", ..., "n".
  static Labels numbered(int n) {
    check_ground_size(n);
    std::vector<std::string> v;
    for (int i = 1; i <= n; ++i) v.push_back(std::to_string(i));
    return Labels(std::move(v));
  }

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  bool has_star() const { return !names_.empty() && names_.back() == kStar; }

  int index(const std::string& label) const {
    auto it = std::find(names_.begin(), names_.end(), label);
    if (it == names_.end()) throw InputError("unknown element label \"" + label + "\"");
    return static_cast<int>(it - names_.begin());
  }

  /// These labels followed by "*".
  Labels with_star() const {
    if (has_star()) throw InputError("ground set already has an extension element");
    auto v = names_;
    v.push_back(kStar);
    return Labels(std::move(v));
  }

  Labels without_star() const {
    if (!has_star()) return *this;
    return Labels(std::vector<std::string>(names_.begin(), names_.end() - 1));
  }

 private:
  std::vector<std::string> names_;
};

// ---------------------------------------------------------------------------
// Field access with located errors.

inline std::string at_path(const std::string& where, const std::string& key) {
  return where.empty() ? key : where + "." + key;
}

inline std::string at_index(const std::string& where, std::size_t k) {
  return where + "[" + std::to_string(k) + "]";
}

[[noreturn]] inline void fail(const std::string& where, const std::string& what) {
  throw InputError((where.empty() ? std::string("input") : where) + ": " + what);
}

inline const Json& field(const Json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(where, "missing field \"" + key + "\"");
  return *it;
}

inline const Json& array_field(const Json& j, const std::string& key, const std::string& where) {
  const Json& a = field(j, key, where);
  if (!a.is_array()) fail(at_path(where, key), "expected an array");
  return a;
}

inline long long integer(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return j.get<long long>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    std::size_t used = 0;
    try {
      long long v = std::stoll(s, &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
  }
  fail(where, "expected an integer");
}

inline int int_field(const Json& j, const std::string& key, const std::string& where) {
  const long long v = integer(field(j, key, where), at_path(where, key));
  if (v < 0 || v > 1'000'000'000) fail(at_path(where, key), "out of range");
  return static_cast<int>(v);
}

inline Trop scalar(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Trop(Rational(mpz_class(std::to_string(j.get<long long>()))));
  if (!j.is_string()) fail(where, "expected a scalar string such as \"3/2\" or \"inf\"");
  try {
    return parse_trop(j.get<std::string>());
  } catch (const InputError& e) {
    fail(where, e.what());
  }
}

inline Rational rational(const Json& j, const std::string& where) {
  const Trop t = scalar(j, where);
  if (t.is_inf()) fail(where, "expected a finite rational");
  return t.value();
}

inline std::string element_name(const Json& e, const std::string& where) {
  if (e.is_string()) return e.get<std::string>();
  if (e.is_number_integer()) return std::to_string(e.get<long long>());
  fail(where, "element must be a string or integer label");
}

// ---------------------------------------------------------------------------
// Ground sets.

struct Ground {
  Labels labels;
  std::vector<int> internal;  // internal[external position] = internal index
};

// Moves "*" to the end, keeping everything else in order.
inline Ground arrange(const std::vector<std::string>& names) {
  Ground g;
  std::vector<std::string> ordered;
  int star = -1;
  for (std::size_t k = 0; k < names.size(); ++k) {
    if (names[k] == kStar) {
      if (star >= 0) throw InputError("duplicate element label \"*\"");
      star = static_cast<int>(k);
    } else {
      ordered.push_back(names[k]);
    }
  }
  if (star >= 0) ordered.push_back(kStar);
  g.labels = Labels(ordered);
  for (const auto& s : names) g.internal.push_back(g.labels.index(s));
  return g;
}

/// Labels from "labels" (array of names) or "mapping" (array of
/// {"label","index"} with 1-based indices); otherwise "1".."n", with the last
/// one replaced by "*" when `star_default` is set.
inline Ground read_ground(const Json& doc, int n, bool star_default, const std::string& where) {
  std::vector<std::string> names;
  if (doc.contains("labels")) {
    const Json& a = array_field(doc, "labels", where);
    for (std::size_t k = 0; k < a.size(); ++k) names.push_back(element_name(a[k], at_index(at_path(where, "labels"), k)));
  } else if (doc.contains("mapping")) {
    const Json& a = array_field(doc, "mapping", where);
    names.assign(a.size(), "");
    for (std::size_t k = 0; k < a.size(); ++k) {
      const std::string p = at_index(at_path(where, "mapping"), k);
      const int idx = int_field(a[k], "index", p);
      if (idx < 1 || idx > static_cast<int>(a.size())) fail(at_path(p, "index"), "out of range");
      if (!names[idx - 1].empty()) fail(at_path(p, "index"), "repeated");
      names[idx - 1] = element_name(field(a[k], "label", p), at_path(p, "label"));
    }
  } else {
    check_ground_size(n);
    for (int i = 1; i <= n; ++i) names.push_back(std::to_string(i));
    if (star_default && n > 0) names.back() = kStar;
  }
  if (n >= 0 && static_cast<int>(names.size()) != n) {
    fail(where, "has " + std::to_string(names.size()) + " labels but n = " + std::to_string(n));
  }
  try {
    return arrange(names);
  } catch (const InputError& e) {
    fail(where, e.what());
  }
}

inline Subset read_subset(const Json& a, const Labels& labels, const std::string& where) {
  if (!a.is_array()) fail(where, "expected an array of element labels");
  Subset s = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const std::string p = at_index(where, k);
    int e = 0;
    try {
      e = labels.index(element_name(a[k], p));
    } catch (const InputError& err) {
      fail(p, err.what());
    }
    if (contains(s, e)) fail(p, "repeated element");
    s |= singleton(e);
  }
  return s;
}

inline Subset read_key(const std::string& key, const Labels& labels, const std::string& where) {
  Subset s = 0;
  std::size_t start = 0;
  if (key.empty()) return 0;
  for (;;) {
    const std::size_t comma = key.find(',', start);
    std::string tok = key.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    tok.erase(0, tok.find_first_not_of(' '));
    tok.erase(tok.find_last_not_of(' ') + 1);
    int e = 0;
    try {
      e = labels.index(tok);
    } catch (const InputError& err) {
      fail(where, err.what());
    }
    if (contains(s, e)) fail(where, "repeated element \"" + tok + "\"");
    s |= singleton(e);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return s;
}

// ---------------------------------------------------------------------------
// Writers.

inline Json mapping_json(const Labels& labels) {
  Json m = Json::array();
  for (int i = 0; i < labels.size(); ++i) m.push_back({{"label", labels.name(i)}, {"index", i + 1}});
  return m;
}

// Integer-looking labels go out as numbers, everything else as strings.
inline Json element_json(const std::string& name) {
  const bool plain = !name.empty() && name.size() < 10 &&
                     std::all_of(name.begin(), name.end(), [](char c) { return c >= '0' && c <= '9'; }) &&
                     (name == "0" || name[0] != '0');
  if (plain) return std::stoi(name);
  return name;
}

inline Json subset_json(Subset s, const Labels& labels) {
  Json a = Json::array();
  for (int e : elements(s)) a.push_back(element_json(labels.name(e)));
  return a;
}

inline std::string subset_key(Subset s, const Labels& labels) {
  std::string out;
  for (int e : elements(s)) {
    if (!out.empty()) out += ',';
    out += labels.name(e);
  }
  return out;
}

inline Json trop_json(const Trop& t) { return to_string(t); }

inline Json rational_json(const Rational& q) { return to_string(Trop(q)); }

inline Json vector_json(const std::vector<Trop>& v) {
  Json a = Json::array();
  for (const auto& t : v) a.push_back(trop_json(t));
  return a;
}

inline Json vector_json(const TropVector& v) {
  std::vector<Trop> e;
  for (int j = 0; j < v.size(); ++j) e.push_back(v[j]);
  return vector_json(e);
}

inline Json matrix_json(const TropMatrix& a) {
  Json rows = Json::array();
  for (int i = 0; i < a.rows(); ++i) rows.push_back(vector_json(a.row(i)));
  return {{"d", a.rows()}, {"n", a.cols()}, {"rows", rows}};
}

inline std::vector<Subset> lex_sorted(std::vector<Subset> v) {
  std::sort(v.begin(), v.end(), lex_less);
  return v;
}

inline Json function_json(const SubsetFunction& f, const Labels& labels) {
  Json values = Json::object();
  for (Subset b : lex_sorted(f.domain())) values[subset_key(b, labels)] = trop_json(f[b]);
  Json j = {{"n", f.universe()}, {"d", f.rank()}};
  if (f.ground() != full_set(f.universe())) j["ground"] = subset_json(f.ground(), labels);
  j["values"] = std::move(values);
  return j;
}

inline Json matroid_json(const Matroid& m, const Labels& labels) {
  Json bases = Json::array();
  for (Subset b : lex_sorted(m.bases())) bases.push_back(subset_json(b, labels));
  Json j = {{"n", m.universe()}, {"d", m.rank()}};
  if (m.ground() != full_set(m.universe())) j["ground"] = subset_json(m.ground(), labels);
  j["bases"] = std::move(bases);
  return j;
}

/// Matroid plus loops, coloops and the number of bases.
inline Json matroid_summary_json(const Matroid& m, const Labels& labels) {
  Json j = matroid_json(m, labels);
  j["basis_count"] = m.bases().size();
  j["loops"] = subset_json(loops(m), labels);
  j["coloops"] = subset_json(coloops(m), labels);
  return j;
}

inline Json set_system_json(const SetSystem& s, const Labels& labels) {
  Json sets = Json::array();
  for (Subset a : s.sets) sets.push_back(subset_json(a, labels));
  return {{"sets", sets}};
}

inline Json column_json(const ExtensionColumn& x) { return {{"x", vector_json(x)}}; }

inline Json apex_row_json(const ApexRow& r, const Labels& labels) {
  Json alpha = Json::object();
  for (int j : elements(r.raised)) alpha[labels.name(j)] = trop_json(r.alpha[j]);
  return {{"F", subset_json(r.flat, labels)},
          {"apex", vector_json(r.apex_point)},
          {"apex_row", r.apex + 1},
          {"matroid", matroid_json(r.matroid, labels)},
          {"lambda", rational_json(r.shift)},
          {"J", subset_json(r.raised, labels)},
          {"alpha", alpha}};
}

inline Json decomposition_json(const ApexDecomposition& dec, const Labels& labels) {
  Json rows = Json::array();
  for (const auto& r : dec.rows) rows.push_back(apex_row_json(r, labels));
  Json mult = Json::array();
  for (const auto& [m, count] : dec.multiplicities()) {
    mult.push_back({{"matroid", matroid_json(m, labels)}, {"count", count}, {"t", t_of(m)}});
  }
  return {{"matrix", matrix_json(dec.matrix)}, {"rows", rows}, {"multiplicities", mult}};
}

inline Json certificates_json(const std::vector<CertificateBasis>& certs, const Labels& ext) {
  Json a = Json::array();
  for (const auto& c : certs) {
    a.push_back({{"row", c.row + 1}, {"basis", subset_json(c.basis, ext)}, {"offset", trop_json(c.offset)}});
  }
  return a;
}

inline Json injectivity_json(const InjectivityVerdict& v, const Labels& ext) {
  if (v.kind == InjectivityKind::kInjective) {
    return {{"verdict", "INJECTIVE"},
            {"witness", {{"certificates", certificates_json(v.certificates, ext)}, {"sampled_pairs", v.sampled_pairs}}}};
  }
  return {{"verdict", "COLLISION"},
          {"witness", {{"row", v.collision->row + 1}, {"x", vector_json(v.collision->x)}, {"y", vector_json(v.collision->y)}}}};
}

inline Json realizability_json(const RealizabilityVerdict& v) {
  Json j = {{"verdict", v.kind == Realizability::kRealizable ? "REALIZABLE" : "NOT_REALIZABLE"}};
  j["witness"] = v.witness ? matrix_json(*v.witness) : Json(nullptr);
  j["patterns"] = v.patterns;
  j["tight_nodes"] = v.tight_nodes;
  return j;
}

inline Json corpus_json(const CorpusSpec& s) {
  Json grid = Json::array();
  for (const auto& q : s.value_grid) grid.push_back(rational_json(q));
  return {{"n", s.n},
          {"d", s.d},
          {"count", s.count},
          {"seed", s.seed},
          {"inf_probability", rational_json(s.inf_probability)},
          {"value_grid", grid}};
}

inline Json lab_report_json(const LabReport& r) {
  const Labels e = Labels::numbered(r.n), ext = e.with_star();
  Json j = {{"trial", r.trial}, {"seed", r.seed}, {"n", r.n}, {"d", r.d}};
  j["base"] = matrix_json(r.base);
  j["mu"] = function_json(r.mu, e);
  j["first"] = matrix_json(r.first);
  j["x"] = vector_json(r.x);
  j["second"] = matrix_json(r.second);
  j["y"] = vector_json(r.y);
  j["same_presentation"] = r.same_presentation;
  j["candidate"] = function_json(r.candidate, ext);
  Json val = {{"ok", r.valuated.ok}, {"reason", r.valuated.reason}};
  if (!r.valuated.ok && r.valuated.pluecker.quad != 0) {
    val["S"] = subset_json(r.valuated.pluecker.base, ext);
    val["quad"] = subset_json(r.valuated.pluecker.quad, ext);
  }
  j["valuated"] = val;
  j["transversal"] = r.transversal ? realizability_json(*r.transversal) : Json(nullptr);
  j["flagged"] = r.flagged;
  j["mapping"] = mapping_json(ext);
  return j;
}

// ---------------------------------------------------------------------------
// Readers.

template <class T>
struct Labelled {
  T value;
  Labels labels;
};

inline int optional_size(const Json& doc, const std::string& key, const std::string& where) {
  return doc.contains(key) ? int_field(doc, key, where) : -1;
}

/// {"d","n","rows":[[...],...]} with optional labels; d and n are checked
/// when present.
inline Labelled<TropMatrix> read_matrix(const Json& doc, const std::string& where = "matrix", bool star_default = false) {
  const Json& rows = array_field(doc, "rows", where);
  if (rows.empty()) fail(at_path(where, "rows"), "needs at least one row");
  const int d = optional_size(doc, "d", where), n = optional_size(doc, "n", where);
  if (d >= 0 && d != static_cast<int>(rows.size())) fail(at_path(where, "d"), "does not match the number of rows");
  const std::string p0 = at_index(at_path(where, "rows"), 0);
  if (!rows[0].is_array()) fail(p0, "expected an array");
  const int cols = static_cast<int>(rows[0].size());
  if (n >= 0 && n != cols) fail(at_path(where, "n"), "does not match the row length");
  const Ground g = read_ground(doc, cols, star_default, where);
  std::vector<TropVector> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string p = at_index(at_path(where, "rows"), i);
    if (!rows[i].is_array()) fail(p, "expected an array");
    if (static_cast<int>(rows[i].size()) != cols) fail(p, "rows of unequal length");
    std::vector<Trop> e(cols);
    for (int c = 0; c < cols; ++c) e[g.internal[c]] = scalar(rows[i][c], at_index(p, c));
    try {
      out.emplace_back(std::move(e));
    } catch (const InputError& err) {
      fail(p, err.what());
    }
  }
  return {TropMatrix(std::move(out)), g.labels};
}

/// {"n","d","values":{"1,2":"0",...}}; missing d-subsets are inf. Keys that
/// mention "*" without explicit labels make the last element "*".
inline Labelled<SubsetFunction> read_function(const Json& doc, const std::string& where = "valuated") {
  const int n = int_field(doc, "n", where), d = int_field(doc, "d", where);
  const Json& values = field(doc, "values", where);
  if (!values.is_object()) fail(at_path(where, "values"), "expected an object keyed by comma-separated labels");
  bool mentions_star = false;
  for (const auto& [k, v] : values.items()) {
    std::string key = "," + k + ",";
    mentions_star = mentions_star || key.find(",*,") != std::string::npos;
  }
  check_ground_size(n);
  if (d > n) fail(at_path(where, "d"), "exceeds n");
  const Ground g = read_ground(doc, n, mentions_star, where);
  std::map<Subset, Trop> m;
  for (const auto& [k, v] : values.items()) {
    const std::string p = at_path(at_path(where, "values"), "\"" + k + "\"");
    const Subset s = read_key(k, g.labels, p);
    if (size_of(s) != d) fail(p, "key is not a " + std::to_string(d) + "-subset");
    if (!m.emplace(s, scalar(v, p)).second) fail(p, "the same subset appears twice");
  }
  return {SubsetFunction(n, full_set(n), d, m), g.labels};
}

inline Labelled<ValuatedMatroid> read_valuated(const Json& doc, const std::string& where = "valuated") {
  auto f = read_function(doc, where);
  const auto p = check_pluecker(f.value);
  if (!p.ok) {
    fail(where, "not a valuated matroid: three-term relation fails at S = {" + subset_key(p.base, f.labels) +
                    "}, quad = {" + subset_key(p.quad, f.labels) + "}");
  }
  try {
    return {ValuatedMatroid(f.value), f.labels};
  } catch (const InputError& e) {
    fail(where, e.what());
  }
}

/// {"n","d","bases":[[1,2],...]}; d is checked when present.
inline Labelled<Matroid> read_matroid(const Json& doc, const std::string& where = "matroid") {
  const int n = int_field(doc, "n", where);
  check_ground_size(n);
  const Ground g = read_ground(doc, n, false, where);
  const Json& bases = array_field(doc, "bases", where);
  std::vector<Subset> b;
  for (std::size_t k = 0; k < bases.size(); ++k) b.push_back(read_subset(bases[k], g.labels, at_index(at_path(where, "bases"), k)));
  const int d = optional_size(doc, "d", where);
  if (!b.empty() && d >= 0 && d != size_of(b.front())) fail(at_path(where, "d"), "does not match the basis size");
  try {
    return {Matroid(n, full_set(n), b), g.labels};
  } catch (const InputError& e) {
    fail(where, e.what());
  }
}

/// {"sets":[[1,2],[1,3]]}, optionally with "n" or labels; without either the
/// ground set is 1..max over integer labels.
inline Labelled<SetSystem> read_set_system(const Json& doc, const std::string& where = "set_system") {
  const Json& sets = array_field(doc, "sets", where);
  int n = optional_size(doc, "n", where);
  if (n < 0 && !doc.contains("labels") && !doc.contains("mapping")) {
    n = 0;
    for (std::size_t k = 0; k < sets.size(); ++k) {
      const std::string p = at_index(at_path(where, "sets"), k);
      if (!sets[k].is_array()) fail(p, "expected an array");
      for (std::size_t e = 0; e < sets[k].size(); ++e) {
        const long long v = integer(sets[k][e], at_index(p, e));
        if (v < 1) fail(at_index(p, e), "integer labels start at 1");
        if (v > kMaxGround) fail(at_index(p, e), "label beyond the ground set cap");
        n = std::max(n, static_cast<int>(v));
      }
    }
  }
  const Ground g = read_ground(doc, n, false, where);
  SetSystem s;
  for (std::size_t k = 0; k < sets.size(); ++k) s.sets.push_back(read_subset(sets[k], g.labels, at_index(at_path(where, "sets"), k)));
  return {s, g.labels};
}

/// {"x":[...]} or a bare array.
inline ExtensionColumn read_column(const Json& doc, int d, const std::string& where = "column") {
  const Json* a = &doc;
  std::string p = where;
  if (doc.is_object()) {
    a = &array_field(doc, "x", where);
    p = at_path(where, "x");
  }
  if (!a->is_array()) fail(where, "expected {\"x\": [...]}");
  if (static_cast<int>(a->size()) != d) fail(p, "needs one entry per row (" + std::to_string(d) + ")");
  ExtensionColumn x;
  for (std::size_t i = 0; i < a->size(); ++i) x.push_back(scalar((*a)[i], at_index(p, i)));
  return x;
}

/// Missing fields keep the CorpusSpec defaults.
inline CorpusSpec read_corpus(const Json& doc, const std::string& where = "corpus") {
  if (!doc.is_object()) fail(where, "expected an object");
  CorpusSpec s;
  if (doc.contains("n")) s.n = int_field(doc, "n", where);
  if (doc.contains("d")) s.d = int_field(doc, "d", where);
  if (doc.contains("count")) s.count = int_field(doc, "count", where);
  if (doc.contains("seed")) {
    const Json& j = doc["seed"];
    if (j.is_number_unsigned()) {
      s.seed = j.get<std::uint64_t>();
    } else {
      const long long v = integer(j, at_path(where, "seed"));
      if (v < 0) fail(at_path(where, "seed"), "must be non-negative");
      s.seed = static_cast<std::uint64_t>(v);
    }
  }
  if (doc.contains("inf_probability")) s.inf_probability = rational(doc["inf_probability"], at_path(where, "inf_probability"));
  if (doc.contains("value_grid")) {
    const Json& g = array_field(doc, "value_grid", where);
    s.value_grid.clear();
    for (std::size_t k = 0; k < g.size(); ++k) s.value_grid.push_back(rational(g[k], at_index(at_path(where, "value_grid"), k)));
  }
  check_ground_size(s.n);
  if (s.d < 1 || s.d > s.n) fail(where, "needs 1 <= d <= n");
  if (s.value_grid.empty()) fail(at_path(where, "value_grid"), "is empty");
  if (s.inf_probability < 0 || s.inf_probability >= 1) fail(at_path(where, "inf_probability"), "must lie in [0, 1)");
  if (s.inf_probability.get_den() > mpz_class("4294967295")) fail(at_path(where, "inf_probability"), "denominator too large");
  return s;
}

/// Parses text as JSON, mapping syntax errors to InputError.
inline Json parse(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(source + ": " + e.what());
  }
}

/// Compact single-line form used for all output.
inline std::string dump(const Json& j) { return j.dump(); }

}  // namespace tropmat::io
