#pragma once

#include <json.hpp>

#include "lexsimp/rational.hpp"

namespace lexsimp::json_util {

/// Integers stay integers; other values go out as the nearest double.
template <typename Json>
Json from_rational(const Rational& r) {
  if (r.is_integer()) return Json(r.num());
  return Json(r.to_double());
}

template <typename Json>
Rational to_rational(const Json& j) {
  if (j.is_number_integer()) return Rational(j.template get<std::int64_t>());
  return Rational::from_double(j.template get<double>());
}

}  // namespace lexsimp::json_util
