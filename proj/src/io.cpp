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

#include "qldp/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

namespace qldp {
namespace {

template <typename T>
Json optional_to_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

template <typename T>
std::optional<T> optional_from_json(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

Json vec3(const Eigen::Vector3d& v) { return Json::array({v(0), v(1), v(2)}); }

Eigen::Vector3d vec3_from(const Json& j) {
  const Vectord v = vector_from_json(j);
  if (v.size() != 3) throw Error(ErrorCode::kInvalidInput, "expected a 3-vector");
  return v;
}

}  // namespace

Json vector_to_json(const Vectord& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Vectord vector_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::kInvalidInput, "expected a JSON array");
  Vectord v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  return v;
}

Json matrix_to_json(const Matrixd& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) out.push_back(vector_to_json(m.row(r).transpose()));
  return out;
}

Matrixd matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) {
    throw Error(ErrorCode::kInvalidInput, "expected a non-empty array of rows");
  }
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Matrixd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Vectord row = vector_from_json(j[static_cast<std::size_t>(r)]);
    if (row.size() != cols) throw Error(ErrorCode::kInvalidInput, "ragged matrix rows");
    m.row(r) = row.transpose();
  }
  return m;
}

void to_json(Json& j, const BlochVectord& v) { j = vector_to_json(v.w); }

void to_json(Json& j, const DensityMatrixd& m) {
  j = Json::array();
  for (int r = 0; r < m.d; ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.d; ++c) row.push_back({m.rho(r, c).real(), m.rho(r, c).imag()});
    j.push_back(row);
  }
}

DensityMatrixd density_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) {
    throw Error(ErrorCode::kInvalidInput, "density matrix must be an array of rows");
  }
  const int d = static_cast<int>(j.size());
  ComplexMatrixd rho(d, d);
  for (int r = 0; r < d; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != d) {
      throw Error(ErrorCode::kInvalidInput, "density matrix must be square");
    }
    for (int c = 0; c < d; ++c) {
      const Json& cell = row[static_cast<std::size_t>(c)];
      if (cell.is_number()) {
        rho(r, c) = {cell.get<double>(), 0.0};
      } else if (cell.is_array() && cell.size() == 2) {
        rho(r, c) = {cell[0].get<double>(), cell[1].get<double>()};
      } else {
        throw Error(ErrorCode::kInvalidInput, "entries must be [re, im] pairs");
      }
    }
  }
  return make_density(std::move(rho));
}

void to_json(Json& j, const AffineChanneld& ch) {
  j = Json{{"d", ch.d}, {"A", matrix_to_json(ch.A)}, {"c", vector_to_json(ch.c)}};
}

void from_json(const Json& j, AffineChanneld& ch) {
  try {
    ch = AffineChanneld(j.at("d").get<int>(), matrix_from_json(j.at("A")),
                        vector_from_json(j.at("c")));
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kInvalidInput, std::string("bad channel JSON: ") + e.what());
  }
}

void to_json(Json& j, const QfiResultd& r) {
  j = Json{{"value", r.value},
           {"branch", r.branch == QfiBranch::kBoundary ? "boundary" : "interior"},
           {"regularization_used", r.regularization_used}};
}

void from_json(const Json& j, QfiResultd& r) {
  r.value = j.at("value").get<double>();
  r.branch = j.at("branch").get<std::string>() == "boundary" ? QfiBranch::kBoundary
                                                              : QfiBranch::kInterior;
  r.regularization_used = j.at("regularization_used").get<bool>();
}

void to_json(Json& j, const LdpCertificate& c) {
  j = Json{{"eps", c.eps},
           {"sup_value", c.sup_value},
           {"margin", c.margin},
           {"verdict", c.verdict},
           {"witness_u", vec3(c.witness_u)},
           {"witness_pair", {vec3(c.witness_omega), vec3(c.witness_nu)}}};
}

void from_json(const Json& j, LdpCertificate& c) {
  c.eps = j.at("eps").get<double>();
  c.sup_value = j.at("sup_value").get<double>();
  c.margin = j.at("margin").get<double>();
  c.verdict = j.at("verdict").get<bool>();
  c.witness_u = vec3_from(j.at("witness_u"));
  c.witness_omega = vec3_from(j.at("witness_pair").at(0));
  c.witness_nu = vec3_from(j.at("witness_pair").at(1));
}

void to_json(Json& j, const AuditResult& r) {
  j = Json{{"verdict", r.consistent ? "consistent" : "refuted"},
           {"consistent", r.consistent},
           {"max_divergence", r.max_divergence},
           {"worst_pair", {vector_to_json(r.worst_omega), vector_to_json(r.worst_nu)}},
           {"samples", r.samples}};
}

void from_json(const Json& j, AuditResult& r) {
  r.consistent = j.at("consistent").get<bool>();
  r.max_divergence = j.at("max_divergence").get<double>();
  r.worst_omega = vector_from_json(j.at("worst_pair").at(0));
  r.worst_nu = vector_from_json(j.at("worst_pair").at(1));
  r.samples = j.at("samples").get<std::int64_t>();
}

void to_json(Json& j, const RegimeFlags& f) {
  j = Json{{"thm1_ok", f.thm1_ok},
           {"cor1_ok", f.cor1_ok},
           {"thm2_ok", f.thm2_ok},
           {"inner_product_zero", f.inner_product_zero}};
}

void from_json(const Json& j, RegimeFlags& f) {
  f.thm1_ok = j.at("thm1_ok").get<bool>();
  f.cor1_ok = j.at("cor1_ok").get<bool>();
  f.thm2_ok = j.at("thm2_ok").get<bool>();
  f.inner_product_zero = j.at("inner_product_zero").get<bool>();
}

void to_json(Json& j, const BoundsReport& r) {
  j = Json{{"family", r.family},
           {"lambda", r.lambda},
           {"alpha", r.alpha},
           {"eps", r.eps},
           {"bias", r.bias},
           {"C1", optional_to_json(r.C1)},
           {"C2", r.C2},
           {"C1_bar", optional_to_json(r.C1_bar)},
           {"N_lower_real", optional_to_json(r.N_lower_real)},
           {"N_upper_real", r.N_upper_real},
           {"N_lower", optional_to_json(r.N_lower)},
           {"N_upper", r.N_upper},
           {"fisher_cap", optional_to_json(r.fisher_cap)},
           {"regime_flags", r.regime_flags},
           {"notes", r.notes}};
}

void from_json(const Json& j, BoundsReport& r) {
  r.family = j.at("family").get<std::string>();
  r.lambda = j.at("lambda").get<double>();
  r.alpha = j.at("alpha").get<double>();
  r.eps = j.at("eps").get<double>();
  r.bias = j.at("bias").get<double>();
  r.C1 = optional_from_json<double>(j, "C1");
  r.C2 = j.at("C2").get<double>();
  r.C1_bar = optional_from_json<double>(j, "C1_bar");
  r.N_lower_real = optional_from_json<double>(j, "N_lower_real");
  r.N_upper_real = j.at("N_upper_real").get<double>();
  r.N_lower = optional_from_json<std::int64_t>(j, "N_lower");
  r.N_upper = j.at("N_upper").get<std::int64_t>();
  r.fisher_cap = optional_from_json<double>(j, "fisher_cap");
  r.regime_flags = j.at("regime_flags").get<RegimeFlags>();
  r.notes = j.at("notes").get<std::string>();
}

void to_json(Json& j, const BoundPair& p) {
  j = Json{{"N_lower_real", optional_to_json(p.lower_real)},
           {"N_upper_real", p.upper_real},
           {"N_lower", optional_to_json(p.lower)},
           {"N_upper", p.upper}};
}

void from_json(const Json& j, BoundPair& p) {
  p.lower_real = optional_from_json<double>(j, "N_lower_real");
  p.upper_real = j.at("N_upper_real").get<double>();
  p.lower = optional_from_json<std::int64_t>(j, "N_lower");
  p.upper = j.at("N_upper").get<std::int64_t>();
}

void to_json(Json& j, const QuditBound& b) {
  j = Json{{"d", b.d},
           {"mixing_weight", b.mixing_weight},
           {"fisher_asymptotic", b.fisher_asymptotic},
           {"fisher_exact", b.fisher_exact},
           {"N_asymptotic_real", b.N_asymptotic_real},
           {"N_exact_real", b.N_exact_real},
           {"N_asymptotic", b.N_asymptotic},
           {"N_exact", b.N_exact}};
}

void from_json(const Json& j, QuditBound& b) {
  b.d = j.at("d").get<int>();
  b.mixing_weight = j.at("mixing_weight").get<double>();
  b.fisher_asymptotic = j.at("fisher_asymptotic").get<double>();
  b.fisher_exact = j.at("fisher_exact").get<double>();
  b.N_asymptotic_real = j.at("N_asymptotic_real").get<double>();
  b.N_exact_real = j.at("N_exact_real").get<double>();
  b.N_asymptotic = j.at("N_asymptotic").get<std::int64_t>();
  b.N_exact = j.at("N_exact").get<std::int64_t>();
}

void to_json(Json& j, const TrialStats& s) {
  j = Json{{"n_trials", s.n_trials},
           {"n_copies", s.n_copies},
           {"lambda0", s.lambda0},
           {"empirical_mean", s.empirical_mean},
           {"empirical_mse", s.empirical_mse},
           {"fisher", s.fisher},
           {"crb_value", s.crb_value},
           {"seed", s.seed},
           {"mean_guard_ok", s.mean_guard_ok},
           {"mse_guard_ok", s.mse_guard_ok}};
}

void from_json(const Json& j, TrialStats& s) {
  s.n_trials = j.at("n_trials").get<std::int64_t>();
  s.n_copies = j.at("n_copies").get<std::int64_t>();
  s.lambda0 = j.at("lambda0").get<double>();
  s.empirical_mean = j.at("empirical_mean").get<double>();
  s.empirical_mse = j.at("empirical_mse").get<double>();
  s.fisher = j.at("fisher").get<double>();
  s.crb_value = j.at("crb_value").get<double>();
  s.seed = j.at("seed").get<std::uint64_t>();
  s.mean_guard_ok = j.at("mean_guard_ok").get<bool>();
  s.mse_guard_ok = j.at("mse_guard_ok").get<bool>();
}

void to_json(Json& j, const UpperBoundValidation& v) {
  j = Json{{"alpha", v.alpha},
           {"eps", v.eps},
           {"n_copies", v.n_copies},
           {"threshold", v.threshold},
           {"stats", v.stats},
           {"pass", v.pass}};
}

void from_json(const Json& j, UpperBoundValidation& v) {
  v.alpha = j.at("alpha").get<double>();
  v.eps = j.at("eps").get<double>();
  v.n_copies = j.at("n_copies").get<std::int64_t>();
  v.threshold = j.at("threshold").get<double>();
  v.stats = j.at("stats").get<TrialStats>();
  v.pass = j.at("pass").get<bool>();
}

void to_json(Json& j, const ChannelSearchResult& r) {
  j = Json{{"eps", r.eps},
           {"best_channel", r.best_channel},
           {"best_qfi", r.best_qfi},
           {"depolarizing_qfi", r.depolarizing_qfi},
           {"fisher_cap", optional_to_json(r.fisher_cap)},
           {"cap_ratio", optional_to_json(r.cap_ratio)},
           {"cap_kind", r.cap_kind},
           {"starts", r.starts},
           {"seed", r.seed},
           {"c_zero", r.c_zero},
           {"feasibility_margin", r.feasibility_margin},
           {"evaluations", r.evaluations},
           {"label", "best found"}};
}

void from_json(const Json& j, ChannelSearchResult& r) {
  r.eps = j.at("eps").get<double>();
  r.best_channel = j.at("best_channel").get<AffineChanneld>();
  r.best_qfi = j.at("best_qfi").get<double>();
  r.depolarizing_qfi = j.at("depolarizing_qfi").get<double>();
  r.fisher_cap = optional_from_json<double>(j, "fisher_cap");
  r.cap_ratio = optional_from_json<double>(j, "cap_ratio");
  r.cap_kind = j.at("cap_kind").get<std::string>();
  r.starts = j.at("starts").get<int>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.c_zero = j.at("c_zero").get<bool>();
  r.feasibility_margin = j.at("feasibility_margin").get<double>();
  r.evaluations = j.at("evaluations").get<std::int64_t>();
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kInvalidInput, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kInvalidInput, path + ": " + e.what());
  }
}

AffineChanneld load_channel(const std::string& path) {
  return read_json_file(path).get<AffineChanneld>();
}

DensityMatrixd load_density(const std::string& path) {
  return density_from_json(read_json_file(path));
}

std::string format_double(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << '\n';
  }
}

}  // namespace qldp
