#include "azk/json_io.hpp"

#include <algorithm>
#include <set>

#include "azk/error.hpp"
#include "azk/parse.hpp"

namespace azk::io {

namespace {

[[noreturn]] void schema(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::Schema, where + ": " + what);
}

twisted::UnitGroup to_group(const Json& j, const std::string& where) {
  const std::string name = to_text(j.at("group"), where + ".group");
  if (name == "Qstar") {
    if (j.contains("n")) schema(where, "\"n\" only applies to mu groups");
    return twisted::UnitGroup::qstar();
  }
  if (name == "mu") {
    if (!j.contains("n")) schema(where, "mu group needs \"n\"");
    const long n = to_integer(j.at("n"), where + ".n");
    if (n < 1) schema(where, "n must be >= 1");
    return twisted::UnitGroup::mu(static_cast<unsigned>(n));
  }
  schema(where + ".group", "expected \"mu\" or \"Qstar\"");
}

std::vector<std::size_t> to_indices(const Json& j, std::size_t arity, std::size_t count,
                                    const std::string& where) {
  if (!j.is_array() || j.size() != arity) {
    schema(where, "expected " + std::to_string(arity) + " indices");
  }
  std::vector<std::size_t> out;
  for (const auto& e : j) {
    const long v = to_integer(e, where);
    if (v < 0 || static_cast<std::size_t>(v) >= count) schema(where, "index out of range");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

std::string group_name(const twisted::UnitGroup& g) {
  return g.kind == twisted::UnitGroup::Kind::Qstar ? "Qstar" : "mu";
}

Json group_header(const twisted::UnitGroup& g, std::size_t count) {
  Json out = Json::object();
  out["group"] = group_name(g);
  if (g.kind == twisted::UnitGroup::Kind::Mu) out["n"] = g.n;
  out["indices"] = count;
  return out;
}

}  // namespace

void require_keys(const Json& obj, std::initializer_list<const char*> required,
                  std::initializer_list<const char*> optional, const std::string& where) {
  if (!obj.is_object()) schema(where, "expected an object");
  std::set<std::string> allowed;
  for (const char* k : required) {
    allowed.insert(k);
    if (!obj.contains(k)) schema(where, std::string("missing field \"") + k + "\"");
  }
  for (const char* k : optional) allowed.insert(k);
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) schema(where, "unknown field \"" + key + "\"");
  }
}

Rational to_rational(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const Error& e) {
      schema(where, e.what());
    }
  }
  schema(where, "expected a rational as a string");
}

long to_integer(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return j.get<long>();
  if (j.is_string()) {
    const Rational r = to_rational(j, where);
    if (r.get_den() == 1 && r.get_num().fits_slong_p()) return r.get_num().get_si();
  }
  schema(where, "expected an integer");
}

std::string to_text(const Json& j, const std::string& where) {
  if (!j.is_string()) schema(where, "expected a string");
  return j.get<std::string>();
}

std::vector<long> to_integer_list(const Json& j, const std::string& where) {
  if (!j.is_array()) schema(where, "expected a list of integers");
  std::vector<long> out;
  for (const auto& e : j) out.push_back(to_integer(e, where));
  return out;
}

MultiPoly to_poly(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return MultiPoly(Rational(j.get<long>()));
  return parse_poly(to_text(j, where));
}

PolyMatrix to_poly_matrix(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) schema(where, "expected a nonempty list of rows");
  const std::size_t cols = j.front().is_array() ? j.front().size() : 0;
  if (cols == 0) schema(where, "rows must be nonempty lists");
  std::vector<MultiPoly> data;
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != cols) schema(where, "rows differ in length");
    for (const auto& e : row) data.push_back(to_poly(e, where));
  }
  return PolyMatrix(j.size(), cols, data);
}

RationalMatrix to_rational_matrix(const Json& j, const std::string& where) {
  const PolyMatrix m = to_poly_matrix(j, where);
  RationalMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t k = 0; k < m.cols(); ++k) {
      if (!m(i, k).is_constant()) schema(where, "expected rational entries");
      out(i, k) = m(i, k).constant_value();
    }
  }
  return out;
}

Json from_matrix(const PolyMatrix& m) {
  Json rows = Json::array();
  for (const auto& row : to_strings(m)) rows.push_back(row);
  return rows;
}

Json from_matrix(const RationalMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(to_string(m(i, k)));
    rows.push_back(row);
  }
  return rows;
}

twisted::UnitCochain2 to_cochain2(const Json& j, const std::string& where) {
  require_keys(j, {"group", "indices"}, {"n", "values"}, where);
  const auto group = to_group(j, where);
  const long count = to_integer(j.at("indices"), where + ".indices");
  if (count < 1) schema(where, "indices must be >= 1");
  twisted::UnitCochain2 out(group, static_cast<std::size_t>(count));
  if (!j.contains("values")) return out;
  if (!j.at("values").is_array()) schema(where + ".values", "expected a list");
  for (const auto& entry : j.at("values")) {
    require_keys(entry, {"ijk", "v"}, {}, where + ".values[]");
    const auto t = to_indices(entry.at("ijk"), 3, out.count(), where + ".ijk");
    try {
      out.set(t[0], t[1], t[2], to_rational(entry.at("v"), where + ".v"));
    } catch (const Error& e) {
      schema(where, e.what());
    }
  }
  return out;
}

twisted::UnitCochain1 to_cochain1(const Json& j, const std::string& where) {
  require_keys(j, {"group", "indices"}, {"n", "values"}, where);
  const auto group = to_group(j, where);
  const long count = to_integer(j.at("indices"), where + ".indices");
  if (count < 1) schema(where, "indices must be >= 1");
  twisted::UnitCochain1 out(group, static_cast<std::size_t>(count));
  if (!j.contains("values")) return out;
  if (!j.at("values").is_array()) schema(where + ".values", "expected a list");
  for (const auto& entry : j.at("values")) {
    require_keys(entry, {"ij", "v"}, {}, where + ".values[]");
    const auto t = to_indices(entry.at("ij"), 2, out.count(), where + ".ij");
    try {
      out.set(t[0], t[1], to_rational(entry.at("v"), where + ".v"));
    } catch (const Error& e) {
      schema(where, e.what());
    }
  }
  return out;
}

Json from_cochain(const twisted::UnitCochain2& a) {
  Json out = group_header(a.group(), a.count());
  Json values = Json::array();
  const std::size_t n = a.count();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (a.at(i, j, k) != a.group().identity()) {
          values.push_back({{"ijk", {i, j, k}}, {"v", to_string(a.at(i, j, k))}});
        }
  out["values"] = values;
  return out;
}

Json from_cochain(const twisted::UnitCochain1& b) {
  Json out = group_header(b.group(), b.count());
  Json values = Json::array();
  const std::size_t n = b.count();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (b.at(i, j) != b.group().identity()) {
        values.push_back({{"ij", {i, j}}, {"v", to_string(b.at(i, j))}});
      }
  out["values"] = values;
  return out;
}

}  // namespace azk::io
