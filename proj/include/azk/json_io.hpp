#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "json.hpp"

#include "azk/matrix.hpp"
#include "azk/twisted.hpp"

namespace azk::io {

using Json = nlohmann::json;

/// Rejects keys outside `allowed` and missing `required` keys (E_SCHEMA).
void require_keys(const Json& obj, std::initializer_list<const char*> required,
                  std::initializer_list<const char*> optional, const std::string& where);

/// Exact rational from a string ("3/4") or a JSON integer.
Rational to_rational(const Json& j, const std::string& where);
long to_integer(const Json& j, const std::string& where);
std::string to_text(const Json& j, const std::string& where);
std::vector<long> to_integer_list(const Json& j, const std::string& where);

MultiPoly to_poly(const Json& j, const std::string& where);
/// Rows of polynomial strings.
PolyMatrix to_poly_matrix(const Json& j, const std::string& where);
RationalMatrix to_rational_matrix(const Json& j, const std::string& where);

Json from_matrix(const PolyMatrix& m);
Json from_matrix(const RationalMatrix& m);

/// {"group": "mu"|"Qstar", "n": N, "indices": I, "values": [{"ijk": [i,j,k], "v": "..."}]}
/// with omitted tuples equal to the identity.
twisted::UnitCochain2 to_cochain2(const Json& j, const std::string& where);
/// Same layout with "ij" keys.
twisted::UnitCochain1 to_cochain1(const Json& j, const std::string& where);
Json from_cochain(const twisted::UnitCochain2& a);
Json from_cochain(const twisted::UnitCochain1& b);

}  // namespace azk::io
