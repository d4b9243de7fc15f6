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

// JSON and CSV forms of the library types.
//
//   Bloch vector    [w_1, ..., w_n]
//   density matrix  [[[re, im], ...], ...]   (row-major)
//   channel         {"d": int, "A": [[...]], "c": [...]}

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "qldp/bounds.hpp"
#include "qldp/channels.hpp"
#include "qldp/estimation.hpp"
#include "qldp/ldp.hpp"
#include "qldp/optimizer.hpp"
#include "qldp/qfi.hpp"

namespace qldp {

using Json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "qldp/1";

Json vector_to_json(const Vectord& v);
Vectord vector_from_json(const Json& j);
Json matrix_to_json(const Matrixd& m);
Matrixd matrix_from_json(const Json& j);

void to_json(Json& j, const BlochVectord& v);
void to_json(Json& j, const DensityMatrixd& m);
DensityMatrixd density_from_json(const Json& j);
void to_json(Json& j, const AffineChanneld& ch);
void from_json(const Json& j, AffineChanneld& ch);

void to_json(Json& j, const QfiResultd& r);
void from_json(const Json& j, QfiResultd& r);
void to_json(Json& j, const LdpCertificate& c);
void from_json(const Json& j, LdpCertificate& c);
void to_json(Json& j, const AuditResult& r);
void from_json(const Json& j, AuditResult& r);
void to_json(Json& j, const RegimeFlags& f);
void from_json(const Json& j, RegimeFlags& f);
void to_json(Json& j, const BoundsReport& r);
void from_json(const Json& j, BoundsReport& r);
void to_json(Json& j, const BoundPair& p);
void from_json(const Json& j, BoundPair& p);
void to_json(Json& j, const QuditBound& b);
void from_json(const Json& j, QuditBound& b);
void to_json(Json& j, const TrialStats& s);
void from_json(const Json& j, TrialStats& s);
void to_json(Json& j, const UpperBoundValidation& v);
void from_json(const Json& j, UpperBoundValidation& v);
void to_json(Json& j, const ChannelSearchResult& r);
void from_json(const Json& j, ChannelSearchResult& r);

Json read_json_file(const std::string& path);
AffineChanneld load_channel(const std::string& path);
DensityMatrixd load_density(const std::string& path);

// 17 significant digits.
std::string format_double(double v);

// Writes a CSV table; every cell is already formatted.
void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

}  // namespace qldp
