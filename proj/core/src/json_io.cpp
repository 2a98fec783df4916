#include "dirichlet/json_io.hpp"

#include "dirichlet/errors.hpp"

namespace dirichlet {

std::complex<double> complex_from_json(const nlohmann::json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw SpecError("expected a complex number as [re, im], got " + j.dump());
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

nlohmann::json complex_to_json(std::complex<double> z) { return nlohmann::json::array({z.real(), z.imag()}); }

}  // namespace dirichlet
