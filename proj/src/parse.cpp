#include "azk/parse.hpp"

namespace azk {

MultiPoly parse_poly(std::string_view text) {
  ExpressionParser<MultiPoly> parser(
      [](const std::string& name) {
        return MultiPoly::variable(name == "\xCE\xBB" ? std::string("lambda") : name);
      },
      [](const MultiPoly& p, Rational& out) {
        if (!p.is_constant()) return false;
        out = p.constant_term();
        return true;
      },
      [](const Rational& c) { return MultiPoly(c); });
  return parser.parse(text);
}

}  // namespace azk
