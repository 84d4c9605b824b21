// Copyright 2026 The conekit Authors
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

#pragma once

// JSON forms of the domain types. Rationals are strings "p/q" (or "p");
// float data (Kraus operators, float tolerances) are JSON numbers.
// Parse errors name the offending field path.

#include <json.hpp>
#include <string>
#include <vector>

#include "conekit/cpmaps.hpp"
#include "conekit/extension.hpp"
#include "conekit/systems.hpp"
#include "conekit/tft.hpp"

namespace conekit {

using Json = nlohmann::json;

Json to_json(const Rational& q);
Json to_json(const QVec& v);
Json to_json(const QMat& m);
Json to_json(const QCVec& v);
Json to_json(const QCMat& m);
Json to_json(const DCMat& m);
Json to_json(const std::vector<QVec>& vs);

Rational rational_from_json(const Json& j, const std::string& path);
QVec qvec_from_json(const Json& j, const std::string& path);
std::vector<QVec> qvecs_from_json(const Json& j, const std::string& path);
QMat qmat_from_json(const Json& j, const std::string& path);
QCVec qcvec_from_json(const Json& j, const std::string& path);
QCMat qcmat_from_json(const Json& j, const std::string& path);
DCMat dcmat_from_json(const Json& j, const std::string& path);

Json cone_to_json(const ConePtr& c);
ConePtr cone_from_json(const Json& j, const std::string& path = "cone");

Json member_cert_to_json(const MemberCert& c);
MemberCert member_cert_from_json(const Json& j, const std::string& path = "certificate");

Json map_to_json(const LinMap& m);
LinMap map_from_json(const Json& j, const std::string& path = "map");

Json kraus_to_json(const KrausList& k);
KrausList kraus_from_json(const Json& j, const std::string& path = "kraus");

Json stem_to_json(const Stem& s);
Json system_to_json(const System& s);
System system_from_json(const Json& j, const std::string& path = "system");

Json ext_cert_to_json(const ExtCert& c);
ExtCert ext_cert_from_json(const Json& j, const std::string& path = "certificate");

Json generated_to_json(const GeneratedVerdict& v);
GeneratedVerdict generated_from_json(const Json& j, const std::string& path = "certificate");

Json assumption_to_json(const AssumptionWitness& w);
AssumptionWitness assumption_from_json(const Json& j, const std::string& path = "certificate");

/** Typed field access with path-qualified parse errors. */
const Json& field(const Json& j, const std::string& key, const std::string& path);
std::size_t size_field(const Json& j, const std::string& key, const std::string& path);

}  // namespace conekit
