// Copyright 2026 The QLDP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// qldp: command-line driver.
//
// Exit codes: 0 success, 1 internal failure, 2 out of regime (a theorem does
// not apply), 3 invalid input.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qldp/bounds.hpp"
#include "qldp/divergence.hpp"
#include "qldp/estimation.hpp"
#include "qldp/io.hpp"
#include "qldp/ldp.hpp"
#include "qldp/optimizer.hpp"

namespace qldp {
namespace {

constexpr int kExitInternal = 1;
constexpr int kExitRegime = 2;
constexpr int kExitInvalid = 3;
constexpr const char* kVersion = "0.1.0";

enum class Kind { kDouble, kInt, kUInt, kString, kFlag };

struct Param {
  std::string name;  // flag name without dashes; JSON key uses underscores
  Kind kind;
  Json fallback;     // null when unset by default
  std::string help;
  bool required = false;
};

std::string KeyOf(const std::string& flag) {
  std::string key = flag;
  for (char& ch : key) {
    if (ch == '-') ch = '_';
  }
  return key;
}

const std::vector<Param>& CommonParams() {
  static const std::vector<Param> params = {
      {"seed", Kind::kUInt, 0, "master RNG seed"},
      {"out", Kind::kString, "json", "output format: json or csv"},
      {"output", Kind::kString, nullptr, "output path (a directory for report)"},
      {"certify-tol", Kind::kDouble, kCertifyTol, "certification margin tolerance"},
      {"audit-tol", Kind::kDouble, kAuditTol, "sampling-audit divergence tolerance"},
  };
  return params;
}

Param FamilyParam() { return {"family", Kind::kString, "radial", "radial, rotation, scaled-rotation, axis-k or a table file"}; }
Param DimParam() { return {"dim", Kind::kInt, 2, "Hilbert-space dimension"}; }
Param RadiusParam() { return {"radius", Kind::kDouble, 0.5, "radius for scaled-rotation"}; }
Param ChannelParams(int which) {
  switch (which) {
    case 0: return {"channel", Kind::kString, nullptr, "channel JSON file"};
    case 1: return {"depolarizing", Kind::kFlag, false, "use the depolarizing channel calibrated at --eps"};
    default: return {"at-eps", Kind::kDouble, nullptr, "budget to test (defaults to --eps)"};
  }
}

struct Subcommand {
  std::string name;
  std::string help;
  std::vector<Param> params;
};

const std::vector<Subcommand>& Subcommands() {
  static const std::vector<Subcommand> all = {
      {"qfi", "quantum Fisher information of a family, optionally after a channel",
       {FamilyParam(), DimParam(), RadiusParam(),
        {"lambda", Kind::kDouble, nullptr, "parameter value", true},
        ChannelParams(0), ChannelParams(1),
        {"eps", Kind::kDouble, nullptr, "depolarizing budget"}}},
      {"certify", "exact eps-LDP certificate for a qubit channel",
       {ChannelParams(0), ChannelParams(1), ChannelParams(2), DimParam(),
        {"eps", Kind::kDouble, nullptr, "privacy budget", true}}},
      {"tighteps", "smallest eps for which a qubit channel is eps-LDP",
       {ChannelParams(0), ChannelParams(1), DimParam(),
        {"eps", Kind::kDouble, nullptr, "depolarizing calibration budget"}}},
      {"audit", "hockey-stick sampling audit of the eps-LDP condition",
       {ChannelParams(0), ChannelParams(1), ChannelParams(2), DimParam(),
        {"eps", Kind::kDouble, nullptr, "privacy budget", true},
        {"n", Kind::kInt, 10000, "number of sampled state pairs"}}},
      {"divergence", "hockey-stick divergence between two states",
       {{"rho", Kind::kString, nullptr, "first density matrix (JSON file)"},
        {"sigma", Kind::kString, nullptr, "second density matrix (JSON file)"},
        {"omega", Kind::kString, nullptr, "first Bloch vector, comma separated"},
        {"nu", Kind::kString, nullptr, "second Bloch vector, comma separated"},
        DimParam(),
        {"gamma", Kind::kDouble, nullptr, "divergence order (default 1)"},
        {"eps", Kind::kDouble, nullptr, "alternatively gamma = exp(eps)"}}},
      {"bounds", "sample-complexity bounds",
       {FamilyParam(), DimParam(), RadiusParam(),
        {"lambda", Kind::kDouble, nullptr, "parameter value", true},
        {"alpha", Kind::kDouble, nullptr, "target mean squared error", true},
        {"eps", Kind::kDouble, nullptr, "privacy budget", true},
        {"bias", Kind::kDouble, 0.0, "bias bound b in [0, 1)"},
        {"corollary1", Kind::kFlag, false, "small-budget bounds (0 < eps < 1)"},
        {"theorem2", Kind::kFlag, false, "zero-offset channel bounds (0 < eps < 1/2)"}}},
      {"scaling", "bounds over a budget grid",
       {FamilyParam(), RadiusParam(),
        {"lambda", Kind::kDouble, 0.6, "parameter value"},
        {"alpha", Kind::kDouble, nullptr, "target mean squared error", true},
        {"eps-grid", Kind::kString, "0.01:0.5:20", "start:stop:count"},
        {"bias", Kind::kDouble, 0.0, "bias bound b in [0, 1)"}}},
      {"simulate", "Monte Carlo of the SLD estimator on privatized copies",
       {FamilyParam(), DimParam(), RadiusParam(),
        {"lambda0", Kind::kDouble, nullptr, "true parameter", true},
        {"eps", Kind::kDouble, nullptr, "depolarizing budget"},
        {"alpha", Kind::kDouble, nullptr, "target MSE; N defaults to the upper bound"},
        {"trials", Kind::kInt, 100000, "number of trials"},
        ChannelParams(0),
        {"n", Kind::kInt, nullptr, "copies per trial"}}},
      {"optimize", "search eps-LDP qubit channels for the largest output QFI",
       {FamilyParam(), RadiusParam(),
        {"lambda", Kind::kDouble, nullptr, "parameter value", true},
        {"eps", Kind::kDouble, nullptr, "privacy budget", true},
        {"starts", Kind::kInt, 32, "number of starts"},
        {"c-zero", Kind::kFlag, false, "restrict to channels with c = 0"}}},
      {"optimize-sweep", "channel search over a budget grid",
       {FamilyParam(), RadiusParam(),
        {"lambda", Kind::kDouble, nullptr, "parameter value", true},
        {"eps-grid", Kind::kString, "0.1:1.0:10", "start:stop:count"},
        {"starts", Kind::kInt, 32, "number of starts"},
        {"c-zero", Kind::kFlag, false, "restrict to channels with c = 0"}}},
      {"report", "write a reproduction bundle into the --output directory",
       {FamilyParam(), RadiusParam(),
        {"lambda", Kind::kDouble, 0.6, "parameter value"},
        {"alpha", Kind::kDouble, 0.01, "target mean squared error"},
        {"eps-grid", Kind::kString, "0.01:0.5:20", "bounds grid"},
        {"sweep-grid", Kind::kString, "0.1:1.0:10", "optimizer grid"},
        {"starts", Kind::kInt, 8, "optimizer starts per budget"},
        {"sim-eps", Kind::kDouble, 1.0, "budget of the Monte Carlo run"},
        {"trials", Kind::kInt, 20000, "Monte Carlo trials"}}},
  };
  return all;
}

// Invalid command line or config; maps to exit 3.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Json Convert(const Param& p, const std::string& raw) {
  const std::string flag = "--" + p.name;
  try {
    std::size_t used = 0;
    switch (p.kind) {
      case Kind::kDouble: {
        const double v = std::stod(raw, &used);
        if (used != raw.size()) break;
        return v;
      }
      case Kind::kInt: {
        const long long v = std::stoll(raw, &used);
        if (used != raw.size()) break;
        return v;
      }
      case Kind::kUInt: {
        if (!raw.empty() && raw[0] == '-') break;
        const unsigned long long v = std::stoull(raw, &used);
        if (used != raw.size()) break;
        return v;
      }
      case Kind::kString:
        return raw;
      case Kind::kFlag:
        return true;
    }
  } catch (const std::exception&) {
  }
  throw UsageError("bad value for " + flag + ": '" + raw + "'");
}

void CheckConfigValue(const Param& p, const Json& v) {
  if (v.is_null()) return;
  bool ok = false;
  switch (p.kind) {
    case Kind::kDouble: ok = v.is_number(); break;
    case Kind::kInt: ok = v.is_number_integer(); break;
    case Kind::kUInt: ok = v.is_number_unsigned(); break;
    case Kind::kString: ok = v.is_string(); break;
    case Kind::kFlag: ok = v.is_boolean(); break;
  }
  if (!ok) throw UsageError("config value for '" + KeyOf(p.name) + "' has the wrong type");
}

// Merges defaults, config values and command-line values (in that order of
// increasing precedence) into one JSON object keyed by KeyOf(name).
Json Merge(const std::vector<Param>& params, const Json& config,
           const std::map<std::string, std::string>& raw,
           const std::map<std::string, CLI::Option*>& options) {
  Json out = Json::object();
  for (const auto& p : params) out[KeyOf(p.name)] = p.fallback;
  if (!config.is_null()) {
    if (!config.is_object()) throw UsageError("config section must be a JSON object");
    for (const auto& [key, value] : config.items()) {
      const Param* match = nullptr;
      for (const auto& p : params) {
        if (KeyOf(p.name) == key) match = &p;
      }
      if (!match) throw UsageError("unknown config key '" + key + "'");
      CheckConfigValue(*match, value);
      out[key] = value;
    }
  }
  for (const auto& p : params) {
    if (options.at(p.name)->count() == 0) continue;
    out[KeyOf(p.name)] = Convert(p, p.kind == Kind::kFlag ? "" : raw.at(p.name));
  }
  for (const auto& p : params) {
    if (p.required && out[KeyOf(p.name)].is_null()) {
      throw UsageError("missing required --" + p.name);
    }
  }
  return out;
}

// Accessors over the merged parameter object.
class Bag {
 public:
  explicit Bag(const Json& j) : j_(j) {}
  bool has(const std::string& key) const { return j_.contains(key) && !j_.at(key).is_null(); }
  double real(const std::string& key) const { return j_.at(key).get<double>(); }
  std::int64_t integer(const std::string& key) const { return j_.at(key).get<std::int64_t>(); }
  std::uint64_t uinteger(const std::string& key) const { return j_.at(key).get<std::uint64_t>(); }
  std::string text(const std::string& key) const { return j_.at(key).get<std::string>(); }
  bool flag(const std::string& key) const { return j_.at(key).get<bool>(); }

 private:
  const Json& j_;
};

std::vector<double> ParseGrid(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream in(spec);
  std::string item;
  while (std::getline(in, item, ':')) parts.push_back(item);
  if (parts.size() != 3) throw UsageError("grid must be start:stop:count, got '" + spec + "'");
  double start = 0, stop = 0;
  long long count = 0;
  try {
    std::size_t a = 0, b = 0, c = 0;
    start = std::stod(parts[0], &a);
    stop = std::stod(parts[1], &b);
    count = std::stoll(parts[2], &c);
    if (a != parts[0].size() || b != parts[1].size() || c != parts[2].size()) throw 0;
  } catch (...) {
    throw UsageError("grid must be start:stop:count, got '" + spec + "'");
  }
  if (count < 1 || count > 100000) throw UsageError("grid count must lie in 1..100000");
  std::vector<double> grid;
  for (long long i = 0; i < count; ++i) {
    grid.push_back(count == 1 ? start : start + (stop - start) * static_cast<double>(i) /
                                                    static_cast<double>(count - 1));
  }
  return grid;
}

Vectord ParseVector(const std::string& text) {
  std::vector<double> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (...) {
      used = 0;
    }
    if (used == 0) throw UsageError("bad vector entry '" + item + "'");
    values.push_back(v);
  }
  return Eigen::Map<Vectord>(values.data(), static_cast<Eigen::Index>(values.size()));
}

struct Context {
  Json config;  // the full RunConfig echo
  Bag params;
  Bag common;
};

StateFamily Family(const Bag& p) {
  const int dim = p.has("dim") ? static_cast<int>(p.integer("dim")) : 2;
  return make_family(p.text("family"), dim, p.real("radius"));
}

AffineChanneld Channel(const Bag& p) {
  const bool from_file = p.has("channel");
  const bool dep = p.has("depolarizing") && p.flag("depolarizing");
  if (from_file == dep) throw UsageError("give exactly one of --channel or --depolarizing");
  if (from_file) return load_channel(p.text("channel"));
  if (!p.has("eps")) throw UsageError("--depolarizing needs --eps");
  return depolarizing<double>(static_cast<int>(p.integer("dim")), p.real("eps"));
}

double TestBudget(const Bag& p) {
  if (p.has("at_eps")) return p.real("at_eps");
  return p.real("eps");
}

// Result of a subcommand: either a JSON value or a table.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Json>> rows;
};

struct Output {
  Json value;
  std::optional<Table> table{};
  Json extra = Json::object();  // merged into the JSON artifact's top level
};

std::string Cell(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return v.dump();
  if (v.is_number()) return format_double(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void Flatten(const Json& v, const std::string& prefix, Table& t, std::vector<Json>& row) {
  if (v.is_object()) {
    for (const auto& [key, inner] : v.items()) {
      Flatten(inner, prefix.empty() ? key : prefix + "." + key, t, row);
    }
    return;
  }
  if (v.is_array() && !v.empty() && (v[0].is_array() || v[0].is_object())) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      Flatten(v[i], prefix + "." + std::to_string(i), t, row);
    }
    return;
  }
  t.header.push_back(prefix);
  if (v.is_array()) {
    std::string joined;
    for (std::size_t i = 0; i < v.size(); ++i) joined += (i ? ";" : "") + Cell(v[i]);
    row.push_back(joined);
  } else {
    row.push_back(v);
  }
}

Table TableOf(const Output& out) {
  if (out.table) return *out.table;
  Table t;
  std::vector<Json> row;
  Flatten(out.value, "", t, row);
  t.rows.push_back(std::move(row));
  return t;
}

Json JsonOf(const Output& out) {
  if (!out.table) return out.value;
  Json rows = Json::array();
  for (const auto& r : out.table->rows) {
    Json obj = Json::object();
    for (std::size_t i = 0; i < r.size(); ++i) obj[out.table->header[i]] = r[i];
    rows.push_back(obj);
  }
  return rows;
}

std::string RenderCsv(const Json& config, const Table& t) {
  std::ostringstream s;
  s << "# schema: " << kSchemaVersion << '\n';
  s << "# config: " << config.dump() << '\n';
  std::vector<std::vector<std::string>> cells;
  for (const auto& r : t.rows) {
    std::vector<std::string> line;
    for (const auto& v : r) line.push_back(Cell(v));
    cells.push_back(std::move(line));
  }
  write_csv(s, t.header, cells);
  return s.str();
}

std::string RenderJson(const Json& config, const Output& out) {
  Json doc = {{"schema", kSchemaVersion}, {"config", config}, {"result", JsonOf(out)}};
  for (const auto& [key, value] : out.extra.items()) doc[key] = value;
  return doc.dump(2) + "\n";
}

void WriteFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write " + path.string());
  f << text;
  if (!f) throw UsageError("write failed for " + path.string());
}

// ---------------------------------------------------------------------------
// Subcommand bodies.

Output RunQfi(const Context& ctx) {
  const Bag& p = ctx.params;
  StateFamily fam = Family(p);
  if (p.has("channel") || p.flag("depolarizing")) fam = privatize(fam, Channel(p));
  const double lambda = p.real("lambda");
  const QfiResultd r = family_qfi(fam, lambda);
  const Vectord w = fam.omega(lambda);
  const Vectord dw = fam.derivative(lambda);
  const double oracle = qfi_sld_oracle(density_from_coords<double>(fam.d, w),
                                       density_derivative<double>(fam.d, dw));
  return {Json{{"family", fam.label},
               {"lambda", lambda},
               {"omega", vector_to_json(w)},
               {"d_omega", vector_to_json(dw)},
               {"qfi", r},
               {"sld_oracle", oracle}}};
}

Output RunCertify(const Context& ctx) {
  const AffineChanneld ch = Channel(ctx.params);
  const double eps = TestBudget(ctx.params);
  const LdpCertificate c = certify(ch, eps, {}, ctx.common.real("certify_tol"));
  return {Json{{"channel", ch}, {"certificate", c}}};
}

Output RunTightEps(const Context& ctx) {
  const AffineChanneld ch = Channel(ctx.params);
  return {Json{{"channel", ch}, {"tight_eps", tight_epsilon(ch)}}};
}

Output RunAudit(const Context& ctx) {
  const AffineChanneld ch = Channel(ctx.params);
  const double eps = TestBudget(ctx.params);
  const auto n = ctx.params.integer("n");
  AuditOptions options;
  options.tolerance = ctx.common.real("audit_tol");
  const AuditResult r = audit_by_sampling(ch, eps, n, ctx.common.uinteger("seed"), options);
  return {Json{{"eps", eps}, {"audit", r}}};
}

Output RunDivergence(const Context& ctx) {
  const Bag& p = ctx.params;
  DensityMatrixd rho, sigma;
  if (p.has("rho") && p.has("sigma")) {
    rho = load_density(p.text("rho"));
    sigma = load_density(p.text("sigma"));
  } else if (p.has("omega") && p.has("nu")) {
    const int d = static_cast<int>(p.integer("dim"));
    rho = to_density(BlochVectord(d, ParseVector(p.text("omega"))));
    sigma = to_density(BlochVectord(d, ParseVector(p.text("nu"))));
  } else {
    throw UsageError("give --rho and --sigma, or --omega and --nu");
  }
  if (p.has("gamma") && p.has("eps")) throw UsageError("give at most one of --gamma and --eps");
  double gamma = 1.0;
  if (p.has("gamma")) gamma = p.real("gamma");
  if (p.has("eps")) {
    if (!(p.real("eps") >= 0.0)) throw UsageError("--eps must be >= 0");
    gamma = std::exp(p.real("eps"));
  }
  return {Json{{"d", rho.d},
               {"gamma", gamma},
               {"hockey_stick", hockey_stick(rho, sigma, gamma)},
               {"trace_distance", trace_distance(rho, sigma)}}};
}

Output RunBounds(const Context& ctx) {
  const Bag& p = ctx.params;
  const StateFamily fam = Family(p);
  const double lambda = p.real("lambda"), alpha = p.real("alpha"), eps = p.real("eps");
  const double bias = p.real("bias");
  if (p.flag("corollary1") && p.flag("theorem2")) {
    throw UsageError("give at most one of --corollary1 and --theorem2");
  }
  if (p.flag("corollary1")) {
    return {Json{{"kind", "corollary1"}, {"bounds", bounds_cor1(fam, lambda, alpha, eps, bias)}}};
  }
  if (p.flag("theorem2")) {
    return {Json{{"kind", "theorem2"},
                 {"C1_bar", c1_bar(fam, lambda)},
                 {"fisher_cap", fisher_cap_thm2(fam, lambda, eps)},
                 {"bounds", bounds_thm2(fam, lambda, alpha, eps, bias)}}};
  }
  if (fam.d != 2) {
    return {Json{{"kind", "qudit"}, {"bounds", qudit_upper_bound(fam, lambda, alpha, eps, fam.d)}}};
  }
  return {Json(bounds_thm1(fam, lambda, alpha, eps, bias))};
}

Table ScalingTable(const StateFamily& fam, double lambda, double alpha, double bias,
                   const std::vector<double>& grid) {
  Table t;
  t.header = {"eps", "N_lower", "N_upper", "fisher_cap", "N_lower_real", "N_upper_real"};
  for (double eps : grid) {
    const BoundsReport r = bounds_thm1(fam, lambda, alpha, eps, bias);
    auto opt = [](const auto& v) { return v ? Json(*v) : Json(nullptr); };
    t.rows.push_back({eps, opt(r.N_lower), r.N_upper, opt(r.fisher_cap), opt(r.N_lower_real),
                      r.N_upper_real});
  }
  return t;
}

Output RunScaling(const Context& ctx) {
  const Bag& p = ctx.params;
  Output out;
  out.table = ScalingTable(Family(p), p.real("lambda"), p.real("alpha"), p.real("bias"),
                           ParseGrid(p.text("eps_grid")));
  return out;
}

Output RunSimulate(const Context& ctx) {
  const Bag& p = ctx.params;
  const StateFamily fam = Family(p);
  const double lambda0 = p.real("lambda0");
  const auto trials = p.integer("trials");
  const auto seed = ctx.common.uinteger("seed");
  AffineChanneld ch;
  if (p.has("channel")) {
    ch = load_channel(p.text("channel"));
  } else if (p.has("eps")) {
    ch = depolarizing<double>(fam.d, p.real("eps"));
  } else {
    throw UsageError("simulate needs --eps or --channel");
  }
  std::int64_t n = 0;
  Output out;
  if (p.has("n")) {
    n = p.integer("n");
  } else {
    if (!p.has("alpha") || !p.has("eps") || p.has("channel")) {
      throw UsageError("without --n, simulate needs --alpha and --eps (N = upper bound)");
    }
    n = bounds_thm1(fam, lambda0, p.real("alpha"), p.real("eps")).N_upper;
  }
  const TrialStats stats = simulate(fam, lambda0, ch, n, trials, seed);
  out.value = stats;
  if (p.has("alpha")) {
    const double alpha = p.real("alpha");
    const double threshold = alpha * (1.0 + 5.0 * std::sqrt(2.0 / static_cast<double>(trials)));
    out.extra["upper_bound_check"] = {{"alpha", alpha},
                                      {"threshold", threshold},
                                      {"pass", stats.empirical_mse <= threshold}};
  }
  out.extra["notes"] =
      "SLD estimator linearized at lambda0 (locally unbiased); saturation is "
      "validated at that level, not as a globally unbiased estimator.";
  return out;
}

OptimizerOptions SearchOptions(const Bag& p) {
  OptimizerOptions o;
  o.c_zero = p.flag("c_zero");
  return o;
}

Output RunOptimize(const Context& ctx) {
  const Bag& p = ctx.params;
  const auto r = maximize_qfi(Family(p), p.real("lambda"), p.real("eps"),
                              static_cast<int>(p.integer("starts")),
                              ctx.common.uinteger("seed"), SearchOptions(p));
  return {Json(r)};
}

Table SweepTable(const std::vector<ChannelSearchResult>& rows) {
  Table t;
  t.header = {"eps", "best_qfi", "depolarizing_qfi", "fisher_cap", "cap_ratio", "cap_kind",
              "feasibility_margin", "starts", "seed", "evaluations"};
  for (const auto& r : rows) {
    auto opt = [](const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); };
    t.rows.push_back({r.eps, r.best_qfi, r.depolarizing_qfi, opt(r.fisher_cap),
                      opt(r.cap_ratio), r.cap_kind, r.feasibility_margin, r.starts, r.seed,
                      r.evaluations});
  }
  return t;
}

Output RunSweep(const Context& ctx) {
  const Bag& p = ctx.params;
  Output out;
  out.table = SweepTable(sweep(Family(p), p.real("lambda"), ParseGrid(p.text("eps_grid")),
                               static_cast<int>(p.integer("starts")),
                               ctx.common.uinteger("seed"), SearchOptions(p)));
  return out;
}

Output RunReport(const Context& ctx) {
  const Bag& p = ctx.params;
  if (!ctx.common.has("output")) throw UsageError("report needs --output <directory>");
  const std::filesystem::path dir = ctx.common.text("output");
  std::filesystem::create_directories(dir);
  const StateFamily fam = Family(p);
  const double lambda = p.real("lambda"), alpha = p.real("alpha");
  const auto seed = ctx.common.uinteger("seed");
  const std::vector<double> sweep_grid = ParseGrid(p.text("sweep_grid"));
  Json row_seeds = Json::array();
  for (std::size_t i = 0; i < sweep_grid.size(); ++i) row_seeds.push_back(seed + i);
  Json manifest = {{"schema", kSchemaVersion},
                   {"version", kVersion},
                   {"config", ctx.config},
                   {"seeds", {{"master", seed}, {"optimize_sweep_rows", row_seeds}, {"simulate", seed}}},
                   {"files", Json::array()}};
  auto emit = [&](const std::string& name, const std::string& step, const std::string& text) {
    WriteFile(dir / name, text);
    manifest["files"].push_back({{"name", name}, {"step", step}});
  };
  auto step = [&](const std::string& name, const std::function<void()>& body) {
    try {
      body();
    } catch (Error& e) {
      throw Error(e.code(), "report step '" + name + "': " + e.what(), e.value());
    }
  };

  step("bounds", [&] {
    emit("bounds.csv", "bounds",
         RenderCsv(ctx.config, ScalingTable(fam, lambda, alpha, 0.0, ParseGrid(p.text("eps_grid")))));
  });
  std::vector<ChannelSearchResult> rows;
  step("optimize-sweep", [&] {
    rows = sweep(fam, lambda, sweep_grid, static_cast<int>(p.integer("starts")), seed);
    emit("optimize_sweep.csv", "optimize-sweep", RenderCsv(ctx.config, SweepTable(rows)));
  });
  step("certification", [&] {
    Table t;
    t.header = {"eps", "channel", "sup_value", "margin", "verdict", "tight_eps"};
    for (const auto& r : rows) {
      const auto dep = depolarizing<double>(2, r.eps);
      const auto c1 = certify(dep, r.eps, {}, ctx.common.real("certify_tol"));
      t.rows.push_back({r.eps, "depolarizing", c1.sup_value, c1.margin, c1.verdict,
                        tight_epsilon(dep)});
      const auto c2 = certify(r.best_channel, r.eps, {}, ctx.common.real("certify_tol"));
      t.rows.push_back({r.eps, "best found", c2.sup_value, c2.margin, c2.verdict,
                        tight_epsilon(r.best_channel)});
    }
    emit("certification.csv", "certification", RenderCsv(ctx.config, t));
  });
  Json sim;
  step("simulate", [&] {
    const auto v = validate_upper_bound(fam, lambda, alpha, p.real("sim_eps"),
                                        p.integer("trials"), seed);
    sim = {{"schema", kSchemaVersion}, {"config", ctx.config}, {"result", v}};
    emit("simulation.json", "simulate", sim.dump(2) + "\n");
  });
  WriteFile(dir / "manifest.json", manifest.dump(2) + "\n");
  return {Json{{"directory", dir.string()}, {"files", manifest["files"]}}};
}

using Runner = std::function<Output(const Context&)>;

const std::map<std::string, Runner>& Runners() {
  static const std::map<std::string, Runner> runners = {
      {"qfi", RunQfi},           {"certify", RunCertify},     {"tighteps", RunTightEps},
      {"audit", RunAudit},       {"divergence", RunDivergence}, {"bounds", RunBounds},
      {"scaling", RunScaling},   {"simulate", RunSimulate},   {"optimize", RunOptimize},
      {"optimize-sweep", RunSweep}, {"report", RunReport},
  };
  return runners;
}

// Reads --config: either a RunConfig object or an artifact that embeds one.
Json LoadConfig(const std::string& path) {
  Json j = read_json_file(path);
  if (j.is_object() && j.contains("schema") && j.contains("config")) j = j.at("config");
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key != "subcommand" && key != "common" && key != "params") {
      throw UsageError("unknown config key '" + key + "'");
    }
  }
  return j;
}

Json Section(const Json& config, const char* key) {
  return config.is_object() && config.contains(key) ? config.at(key) : Json();
}

int Main(int argc, char** argv) {
  CLI::App app{"qldp: local differential privacy for quantum parameter estimation"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  std::string config_path;
  struct Registered {
    CLI::App* app;
    const Subcommand* spec;
    std::map<std::string, std::string> raw;
    std::map<std::string, CLI::Option*> options;
    std::map<std::string, std::string> common_raw;
    std::map<std::string, CLI::Option*> common_options;
  };
  std::vector<std::unique_ptr<Registered>> registered;
  for (const auto& spec : Subcommands()) {
    auto reg = std::make_unique<Registered>();
    reg->spec = &spec;
    reg->app = app.add_subcommand(spec.name, spec.help);
    reg->app->add_option("--config", config_path, "RunConfig JSON (flags take precedence)");
    auto add = [](CLI::App* sub, const Param& p, std::map<std::string, std::string>& raw,
                  std::map<std::string, CLI::Option*>& options) {
      CLI::Option* opt = p.kind == Kind::kFlag
                             ? sub->add_flag("--" + p.name, p.help)
                             : sub->add_option("--" + p.name, raw[p.name], p.help);
      options[p.name] = opt;
    };
    for (const auto& p : spec.params) add(reg->app, p, reg->raw, reg->options);
    for (const auto& p : CommonParams()) add(reg->app, p, reg->common_raw, reg->common_options);
    registered.push_back(std::move(reg));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  const Registered* chosen = nullptr;
  for (const auto& reg : registered) {
    if (reg->app->parsed()) chosen = reg.get();
  }
  const std::string name = chosen->spec->name;

  try {
    Json file_config;
    if (!config_path.empty()) {
      file_config = LoadConfig(config_path);
      if (file_config.contains("subcommand") && file_config.at("subcommand") != name) {
        throw UsageError("config is for subcommand '" +
                         file_config.at("subcommand").get<std::string>() + "', not '" + name + "'");
      }
    }
    const Json common = Merge(CommonParams(), Section(file_config, "common"),
                              chosen->common_raw, chosen->common_options);
    const Json params = Merge(chosen->spec->params, Section(file_config, "params"),
                              chosen->raw, chosen->options);
    const std::string format = common.at("out").get<std::string>();
    if (format != "json" && format != "csv") throw UsageError("--out must be json or csv");
    const Json config = {{"subcommand", name}, {"common", common}, {"params", params}};
    const Context ctx{config, Bag(config.at("params")), Bag(config.at("common"))};

    const Output out = Runners().at(name)(ctx);
    const std::string text =
        format == "csv" ? RenderCsv(config, TableOf(out)) : RenderJson(config, out);
    if (name != "report" && !common.at("output").is_null()) {
      WriteFile(common.at("output").get<std::string>(), text);
    } else {
      std::cout << text;
      std::cout.flush();
    }
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "qldp " << name << ": " << e.what() << "\n";
    return kExitInvalid;
  } catch (const Error& e) {
    std::cerr << "qldp " << name << ": " << ErrorCodeName(e.code()) << ": " << e.what() << "\n";
    if (e.IsRegimeError()) return kExitRegime;
    if (e.code() == ErrorCode::kInternal) return kExitInternal;
    return kExitInvalid;
  } catch (const Json::exception& e) {
    std::cerr << "qldp " << name << ": invalid JSON: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "qldp " << name << ": " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "qldp " << name << ": internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace
}  // namespace qldp

int main(int argc, char** argv) { return qldp::Main(argc, argv); }
