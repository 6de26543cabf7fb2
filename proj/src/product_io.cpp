#include <sstream>

#include "stheta/modularity.hpp"

namespace stheta {

namespace {

std::string strip_comment(const std::string& line) {
  auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

[[noreturn]] void fail(std::size_t lineno, const std::string& what) {
  throw std::invalid_argument("line " + std::to_string(lineno) + ": " + what);
}

}  // namespace

ThetaProduct parse_product(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  std::size_t g = 0;
  Integer level = 0;
  bool have_header = false;
  std::vector<ProductTerm> terms;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream fields(strip_comment(line));
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (!have_header) {
      if (tok.size() != 2) fail(lineno, "expected header 'g N'");
      try {
        long gv = std::stol(tok[0]);
        if (gv <= 0) fail(lineno, "genus must be positive");
        g = static_cast<std::size_t>(gv);
        level = Integer(tok[1]);
      } catch (const std::invalid_argument&) {
        fail(lineno, "expected header 'g N'");
      } catch (const std::out_of_range&) {
        fail(lineno, "genus out of range");
      }
      if (level <= 0) fail(lineno, "level must be positive");
      have_header = true;
      continue;
    }
    if (tok.size() != 2 * g + 1)
      fail(lineno, "expected " + std::to_string(2 * g + 1) + " fields, got " + std::to_string(tok.size()));
    try {
      Integer m(tok[0]);
      std::vector<Rational> v;
      for (std::size_t i = 1; i < tok.size(); ++i) v.push_back(parse_rational(tok[i]));
      terms.push_back({Characteristic::from_vector(v), m});
    } catch (const std::invalid_argument& e) {
      fail(lineno, e.what());
    }
  }
  if (!have_header) throw std::invalid_argument("empty product description");
  return ThetaProduct(g, level, std::move(terms));
}

std::string format_product(const ThetaProduct& product) {
  std::ostringstream out;
  out << product.g() << " " << product.level().get_str() << "\n";
  for (const auto& t : product.terms()) out << t.exponent.get_str() << " " << t.chi.to_string() << "\n";
  return out.str();
}

}  // namespace stheta
