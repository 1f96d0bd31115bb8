#include "azk/matrix.hpp"

#include <algorithm>

namespace azk {

PolyMatrix derivative(const PolyMatrix& m, const std::string& var) {
  return m.map([&](const MultiPoly& p) { return p.derivative(var); });
}

PolyMatrix substitute(const PolyMatrix& m, const std::string& var, const Rational& value) {
  return m.map([&](const MultiPoly& p) { return p.substitute(var, value); });
}

int max_degree(const PolyMatrix& m) {
  int d = -1;
  for (const auto& p : m.data()) d = std::max(d, p.total_degree());
  return d;
}

unsigned max_degree(const PolyMatrix& m, const std::string& var) {
  unsigned d = 0;
  for (const auto& p : m.data()) d = std::max(d, p.degree(var));
  return d;
}

std::vector<std::string> variables_of(const PolyMatrix& m) {
  std::vector<std::string> vars;
  for (const auto& p : m.data()) {
    for (const auto& v : p.variables()) {
      if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    }
  }
  std::sort(vars.begin(), vars.end(),
            [](const std::string& a, const std::string& b) { return variable_precedes(a, b); });
  return vars;
}

std::vector<std::vector<std::string>> to_strings(const PolyMatrix& m) {
  std::vector<std::vector<std::string>> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out[i].push_back(m(i, j).to_string());
  }
  return out;
}

std::string to_string(const PolyMatrix& m) {
  std::string out = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out += i == 0 ? "[" : ", [";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j > 0) out += ", ";
      out += m(i, j).to_string();
    }
    out += "]";
  }
  return out + "]";
}

}  // namespace azk
