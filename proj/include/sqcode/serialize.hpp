#pragma once

#include <string>

#include <json.hpp>

#include "sqcode/attacks.hpp"

namespace sqcode {

using Json = nlohmann::json;

// All artifacts are JSON with field elements as their integer codes:
//   field       {"p", "m", "modulus"}
//   matrix      {"rows", "cols", "data"}          (row-major codes)
//   code        {"field", "n", "gen"}             (gen in RREF)
//   grs spec    {"field", "k", "x", "y"}
//   ciphertext  {"c"}
// Key and crack records are per-scheme objects carrying a "scheme" tag.
// Loading validates shape and ranges and reports the offending field.

Json field_to_json(const Field& f);
FieldPtr field_from_json(const Json& j);

Json matrix_to_json(const MatrixGF& m);
MatrixGF matrix_from_json(const Json& j, const FieldPtr& f);

Json vector_to_json(const VectorGF& v);
VectorGF vector_from_json(const Json& j, const FieldPtr& f);

Json code_to_json(const LinearCode& c);
LinearCode code_from_json(const Json& j);

Json grs_spec_to_json(const GrsSpec& s);
GrsSpec grs_spec_from_json(const Json& j);

Json wieschebrink_secret_to_json(const WieschebrinkSecretKey& sk);
WieschebrinkSecretKey wieschebrink_secret_from_json(const Json& j);
Json wieschebrink_public_to_json(const FieldPtr& f, const WieschebrinkPublicKey& pk);
std::pair<FieldPtr, WieschebrinkPublicKey> wieschebrink_public_from_json(const Json& j);

Json bl_secret_to_json(const BlSecretKey& sk);
BlSecretKey bl_secret_from_json(const Json& j);
Json bl_public_to_json(const FieldPtr& f, const BlPublicKey& pk);
std::pair<FieldPtr, BlPublicKey> bl_public_from_json(const Json& j);

Json bbcrs_secret_to_json(const BbcrsSecretKey& sk);
BbcrsSecretKey bbcrs_secret_from_json(const Json& j);
Json bbcrs_public_to_json(const FieldPtr& f, const BbcrsPublicKey& pk);
std::pair<FieldPtr, BbcrsPublicKey> bbcrs_public_from_json(const Json& j);

Json ciphertext_to_json(const VectorGF& ct);
VectorGF ciphertext_from_json(const Json& j, const FieldPtr& f);

Json wieschebrink_crack_to_json(const WieschebrinkCrack& c);
WieschebrinkCrack wieschebrink_crack_from_json(const Json& j);
Json bl_crack_to_json(const BlCrack& c);
BlCrack bl_crack_from_json(const Json& j);
Json bbcrs_crack_to_json(const BbcrsCrack& c);
BbcrsCrack bbcrs_crack_from_json(const Json& j);

// File helpers; write is atomic-ish (temp + rename) and read maps parse
// errors onto ParamError with the path in the message.
void save_json(const std::string& path, const Json& j);
Json load_json(const std::string& path);

}  // namespace sqcode
