#include "hz/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "hz/padic.hpp"

namespace hz {

using nlohmann::json;

nlohmann::json nu_to_json(const NuTruncation& nu) {
  json j;
  j["label"] = nu.label;
  j["p"] = nu.p;
  j["sign"] = nu.sign;
  j["exceptional"] = nu.exceptional;
  j["tail"] = nu.tail;
  j["generators"] = nu.generators;
  j["shape"] = nu.shape.orders;
  std::vector<std::string> coeffs;
  coeffs.reserve(nu.measure.size());
  for (long i = 0; i < nu.measure.size(); i++) {
    const Cyc& c = nu.measure.coeff(i);
    coeffs.push_back(c.is_zero() ? "0" : c.rational_value().get_str());
  }
  j["coeffs"] = coeffs;
  return j;
}

NuTruncation nu_from_json(const nlohmann::json& j) {
  NuTruncation nu;
  nu.label = j.at("label").get<std::string>();
  nu.p = j.at("p").get<unsigned long>();
  nu.sign = j.at("sign").get<int>();
  if (nu.p < 2) throw std::invalid_argument("nu_from_json: p must be at least 2");
  if (nu.sign != 1 && nu.sign != -1) throw std::invalid_argument("nu_from_json: sign");
  nu.exceptional = j.at("exceptional").get<std::vector<long>>();
  nu.tail = j.at("tail").get<std::vector<long>>();
  nu.generators = j.at("generators").get<std::vector<long>>();
  nu.shape = GroupShape(j.at("shape").get<std::vector<long>>());
  auto coeffs = j.at("coeffs").get<std::vector<std::string>>();
  if (static_cast<long>(coeffs.size()) != nu.shape.size())
    throw std::invalid_argument("nu_from_json: coefficient count does not match the shape");
  if (nu.generators.size() != nu.exceptional.size() + nu.tail.size())
    throw std::invalid_argument("nu_from_json: generator count does not match the primes");
  std::vector<mpq_class> v;
  v.reserve(coeffs.size());
  for (const auto& s : coeffs) v.push_back(parse_rational(s));
  nu.measure = Measure::from_rational(nu.shape, v);
  return nu;
}

void save_nu(const std::string& path, const NuTruncation& nu) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_nu: cannot open " + path);
  out << nu_to_json(nu).dump(2) << "\n";
}

NuTruncation load_nu(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_nu: cannot open " + path);
  json j;
  in >> j;
  return nu_from_json(j);
}

std::string symbol_cache_file(const std::string& dir, const std::string& label, long precision) {
  return dir + "/" + label + ".p" + std::to_string(precision) + ".symbols.csv";
}

void save_symbols(const std::string& path, const SymbolEngine& S) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_symbols: cannot open " + path);
  out << "# label=" << S.curve().label << " precision=" << S.precision() << "\n";
  out << "a,q,plus,minus\n";
  for (const auto& [key, v] : S.cached())
    out << key.first << "," << key.second << "," << v.plus.get_str() << "," << v.minus.get_str()
        << "\n";
}

long load_symbols(const std::string& path, SymbolEngine& S) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_symbols: cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("load_symbols: empty file " + path);
  std::string expect = "# label=" + S.curve().label + " precision=" + std::to_string(S.precision());
  if (line != expect)
    throw std::runtime_error("load_symbols: store header '" + line + "' does not match '" +
                             expect + "'");
  if (!std::getline(in, line) || line != "a,q,plus,minus")
    throw std::runtime_error("load_symbols: missing column header in " + path);
  long n = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string fa, fq, fp, fm;
    if (!std::getline(ss, fa, ',') || !std::getline(ss, fq, ',') || !std::getline(ss, fp, ',') ||
        !std::getline(ss, fm, ','))
      throw std::runtime_error("load_symbols: malformed row '" + line + "'");
    SymbolValue v{parse_rational(fp), parse_rational(fm)};
    S.preload(std::stol(fa), std::stol(fq), v);
    n++;
  }
  return n;
}

}  // namespace hz
