#pragma once
// Serialization: truncation measures as JSON documents and modular-symbol
// caches as CSV files addressed by (curve label, precision).

#include <string>

#include "json.hpp"

#include "hz/horizontal.hpp"
#include "hz/modsym.hpp"

namespace hz {

// JSON round trip for a truncation; coefficients are exact "num/den" strings
nlohmann::json nu_to_json(const NuTruncation& nu);
NuTruncation nu_from_json(const nlohmann::json& j);

void save_nu(const std::string& path, const NuTruncation& nu);
NuTruncation load_nu(const std::string& path);

// canonical cache filename for a symbol store
std::string symbol_cache_file(const std::string& dir, const std::string& label, long precision);

// CSV store of every symbol currently cached by the engine; the header row
// pins the curve label and precision so stores cannot be mixed
void save_symbols(const std::string& path, const SymbolEngine& S);
// preloads the store into the engine; throws if the label or precision in
// the file disagrees with the engine; returns the number of entries loaded
long load_symbols(const std::string& path, SymbolEngine& S);

}  // namespace hz
