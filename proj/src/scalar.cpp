#include "almab/scalar.hpp"

#include <cctype>

namespace almab {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

bool is_symbol_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_symbol_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    throw std::invalid_argument("malformed rational literal '" + std::string(text) + "'");
  }
  Integer p{std::string(num)};
  Integer q{std::string(den)};
  if (q.is_zero()) {
    throw std::invalid_argument("zero denominator in rational literal '" + std::string(text) + "'");
  }
  Rational r(p, q);
  return negative ? Rational(-r) : r;
}

std::string to_string(const Rational& q) { return q.str(); }

bool is_integer(const Rational& q) { return boost::multiprecision::denominator(q) == 1; }

ScalarLC::ScalarLC(Rational c, SymbolMap symbols) : constant_(std::move(c)), symbols_(std::move(symbols)) {
  canonicalize();
}

ScalarLC ScalarLC::symbol(const std::string& name, const Rational& coefficient) {
  return ScalarLC(0, SymbolMap{{name, coefficient}});
}

void ScalarLC::canonicalize() {
  for (auto it = symbols_.begin(); it != symbols_.end();) {
    if (it->second.is_zero()) {
      it = symbols_.erase(it);
    } else {
      ++it;
    }
  }
}

Rational ScalarLC::coefficient(const std::string& symbol) const {
  auto it = symbols_.find(symbol);
  return it == symbols_.end() ? Rational(0) : it->second;
}

ScalarLC& ScalarLC::operator+=(const ScalarLC& other) {
  constant_ += other.constant_;
  for (const auto& [name, c] : other.symbols_) {
    auto [it, inserted] = symbols_.try_emplace(name, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) symbols_.erase(it);
    }
  }
  return *this;
}

ScalarLC& ScalarLC::operator-=(const ScalarLC& other) { return *this += -other; }

ScalarLC& ScalarLC::operator*=(const Rational& q) {
  if (q.is_zero()) {
    constant_ = 0;
    symbols_.clear();
    return *this;
  }
  constant_ *= q;
  for (auto& entry : symbols_) entry.second *= q;
  return *this;
}

ScalarLC operator*(const ScalarLC& a, const ScalarLC& b) {
  if (a.is_rational()) return a.constant() * b;
  if (b.is_rational()) return a * b.constant();
  throw SymbolicProductError("product of symbolic quantities " + a.to_string() + " and " + b.to_string() +
                             " is not representable");
}

Rational ScalarLC::evaluate(const std::map<std::string, Rational>& values) const {
  Rational total = constant_;
  for (const auto& [name, c] : symbols_) {
    auto it = values.find(name);
    if (it == values.end()) throw std::out_of_range("no value supplied for symbol '" + name + "'");
    total += c * it->second;
  }
  return total;
}

std::string ScalarLC::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  auto append = [&out](const Rational& c, const std::string& symbol) {
    bool negative = c < 0;
    Rational magnitude = negative ? Rational(-c) : c;
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    if (symbol.empty()) {
      out += magnitude.str();
    } else {
      if (magnitude != 1) out += magnitude.str() + "*";
      out += symbol;
    }
  };
  if (!constant_.is_zero()) append(constant_, "");
  for (const auto& [name, c] : symbols_) append(c, name);
  return out;
}

ScalarLC ScalarLC::parse(std::string_view text) {
  std::string compact;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
  }
  if (compact.empty()) throw std::invalid_argument("empty scalar literal");

  ScalarLC result;
  std::size_t pos = 0;
  bool first = true;
  while (pos < compact.size()) {
    bool negative = false;
    if (compact[pos] == '+' || compact[pos] == '-') {
      negative = compact[pos] == '-';
      ++pos;
    } else if (!first) {
      throw std::invalid_argument("expected '+' or '-' in scalar literal '" + std::string(text) + "'");
    }
    first = false;
    std::size_t end = pos;
    while (end < compact.size() && compact[end] != '+' && compact[end] != '-') ++end;
    std::string term = compact.substr(pos, end - pos);
    pos = end;
    if (term.empty()) throw std::invalid_argument("empty term in scalar literal '" + std::string(text) + "'");

    // coefficient part is a leading rational, the remainder (after an optional '*') a symbol
    std::size_t split = 0;
    while (split < term.size() && (std::isdigit(static_cast<unsigned char>(term[split])) || term[split] == '/')) ++split;
    std::string coeff_text = term.substr(0, split);
    std::string rest = term.substr(split);
    if (!rest.empty() && rest.front() == '*') {
      if (coeff_text.empty()) throw std::invalid_argument("dangling '*' in scalar literal '" + std::string(text) + "'");
      rest.erase(0, 1);
      if (rest.empty()) throw std::invalid_argument("dangling '*' in scalar literal '" + std::string(text) + "'");
    }
    Rational coeff = coeff_text.empty() ? Rational(1) : parse_rational(coeff_text);
    if (negative) coeff = -coeff;
    if (rest.empty()) {
      if (coeff_text.empty()) throw std::invalid_argument("malformed scalar literal '" + std::string(text) + "'");
      result += ScalarLC(coeff);
    } else {
      if (!is_symbol_start(rest.front())) {
        throw std::invalid_argument("malformed symbol in scalar literal '" + std::string(text) + "'");
      }
      for (char c : rest) {
        if (!is_symbol_char(c)) {
          throw std::invalid_argument("malformed symbol in scalar literal '" + std::string(text) + "'");
        }
      }
      result += ScalarLC::symbol(rest, coeff);
    }
  }
  return result;
}

ScalarLC lc_add(const ScalarLC& a, const ScalarLC& b) { return a + b; }
ScalarLC lc_scale(const Rational& q, const ScalarLC& a) { return q * a; }
bool lc_is_zero(const ScalarLC& a) { return a.is_zero(); }

}  // namespace almab
