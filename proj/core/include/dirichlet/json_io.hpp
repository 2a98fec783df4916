#pragma once

#include <complex>

#include <nlohmann/json.hpp>

namespace dirichlet {

/// Complex numbers travel as two-element arrays [re, im]. A bare number is
/// accepted on input as a real value.
std::complex<double> complex_from_json(const nlohmann::json& j);
nlohmann::json complex_to_json(std::complex<double> z);

}  // namespace dirichlet
