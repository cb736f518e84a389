#include "kruskal/strategy.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "kruskal/deck_model.hpp"
#include "kruskal/errors.hpp"

namespace kruskal {

namespace {

int parse_int(const std::string& text) {
  int value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) throw InvalidParameter("not an integer: '" + text + "'");
  return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

}  // namespace

double parse_number(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) {
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(text, &used);
    } catch (const std::exception&) {
      throw InvalidParameter("not a number: '" + text + "'");
    }
    if (used != text.size()) throw InvalidParameter("not a number: '" + text + "'");
    return value;
  }
  const int num = parse_int(text.substr(0, slash));
  const int den = parse_int(text.substr(slash + 1));
  if (den == 0) throw InvalidParameter("zero denominator in '" + text + "'");
  return to_double(Rational(num, den));
}

std::optional<Rational> parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) {
    if (text.empty() || text.find_first_not_of("-0123456789") != std::string::npos) return std::nullopt;
    return Rational(parse_int(text));
  }
  const int den = parse_int(text.substr(slash + 1));
  if (den == 0) throw InvalidParameter("zero denominator in '" + text + "'");
  return Rational(parse_int(text.substr(0, slash)), den);
}

SecretStrategy SecretStrategy::fixed(int position) {
  if (position < 1) throw InvalidParameter("secret position must be >= 1");
  return SecretStrategy(FixedSecret{position});
}

SecretStrategy SecretStrategy::uniform(int lo, int hi) {
  if (lo < 1 || hi < lo) throw InvalidParameter("uniform secret range must satisfy 1 <= lo <= hi");
  return SecretStrategy(UniformSecret{lo, hi});
}

SecretStrategy SecretStrategy::geometric(double p) {
  if (!(p > 0.0 && p < 1.0)) throw InvalidParameter("geometric parameter must lie in (0,1)");
  return SecretStrategy(GeometricSecret{p});
}

SecretStrategy SecretStrategy::parse(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.empty()) throw InvalidParameter("empty strategy");
  const std::string& kind = parts[0];
  if (kind == "first" && parts.size() == 1) return fixed(1);
  if (kind == "fixed" && parts.size() == 2) return fixed(parse_int(parts[1]));
  if (kind == "uniform" && parts.size() == 3) return uniform(parse_int(parts[1]), parse_int(parts[2]));
  if (kind == "geometric" && parts.size() == 2) return geometric(parse_number(parts[1]));
  throw InvalidParameter("bad strategy '" + text + "' (want fixed:J, uniform:LO:HI, geometric:P or first)");
}

int SecretStrategy::max_secret() const {
  if (const auto* f = std::get_if<FixedSecret>(&rule_)) return f->position;
  if (const auto* u = std::get_if<UniformSecret>(&rule_)) return u->hi;
  throw UnsupportedModel("geometric secret has unbounded support");
}

std::vector<double> SecretStrategy::pmf() const {
  std::vector<double> out(static_cast<std::size_t>(max_secret()), 0.0);
  if (std::holds_alternative<FixedSecret>(rule_)) {
    out.back() = 1.0;
  } else {
    const auto& u = std::get<UniformSecret>(rule_);
    const double w = 1.0 / (u.hi - u.lo + 1);
    for (int s = u.lo; s <= u.hi; ++s) out[static_cast<std::size_t>(s - 1)] = w;
  }
  return out;
}

int SecretStrategy::sample(CounterRng& rng) const {
  if (const auto* f = std::get_if<FixedSecret>(&rule_)) return f->position;
  if (const auto* u = std::get_if<UniformSecret>(&rule_)) return rng.between(u->lo, u->hi);
  const double p = std::get<GeometricSecret>(rule_).p;
  return 1 + static_cast<int>(std::floor(std::log1p(-rng.uniform01()) / std::log(p)));
}

std::string SecretStrategy::describe() const {
  std::ostringstream os;
  if (const auto* f = std::get_if<FixedSecret>(&rule_)) {
    os << "fixed:" << f->position;
  } else if (const auto* u = std::get_if<UniformSecret>(&rule_)) {
    os << "uniform:" << u->lo << ':' << u->hi;
  } else {
    os.precision(17);
    os << "geometric:" << std::get<GeometricSecret>(rule_).p;
  }
  return os.str();
}

}  // namespace kruskal
