#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"

#include "dicke/cones.hpp"
#include "dicke/dsmatrix.hpp"
#include "dicke/hierarchy.hpp"
#include "dicke/polynomial.hpp"
#include "dicke/soscone.hpp"
#include "dicke/symtensor.hpp"
#include "dicke/witnesslib.hpp"

namespace dicke {

/// Output documents use insertion order so reports are byte-stable.
using OrderedJson = nlohmann::ordered_json;

// --- serialization (deterministic field and entry order) -------------------

OrderedJson tensor_to_json(const SymTensor& T);
OrderedJson ds_to_json(const DsMatrix& X);
OrderedJson poly_to_json(const HomPoly& p);
OrderedJson witness_to_json(const Witness& w);
OrderedJson context_to_json(const num::NumericContext& ctx);
OrderedJson verdict_to_json(const ConeVerdict& v, std::uint64_t seed);
OrderedJson cp_to_json(const CpResult& r, std::uint64_t seed);
OrderedJson verdict_to_json(const SosVerdict& v);
OrderedJson verdict_to_json(const HierarchyVerdict& v);

// --- parsing ---------------------------------------------------------------
// Schema violations (missing fields, shape mismatches, duplicate alpha keys)
// throw std::invalid_argument; malformed JSON raises the parser's own error
// before these functions run.

/// {"n":..,"d":..,"entries":[{"alpha":[..],"value":..},..]}; omitted alphas
/// are zero; a duplicate alpha is a parse error.
SymTensor tensor_from_json(const nlohmann::json& j);

/// {"n":..,"d":..,"lambda":[{"alpha":..,"value":..},..]} or the same with a
/// "q" array of diagonal-tensor values (converted internally).
DsMatrix ds_from_json(const nlohmann::json& j);

/// Mirrors the tensor schema with "exponent" keys.
HomPoly poly_from_json(const nlohmann::json& j);

/// FNV-1a 64-bit digest, lower-case hex.
std::string digest_hex(const std::string& bytes);

}  // namespace dicke
