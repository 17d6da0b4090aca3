#include <cctype>
#include <cstdio>

#include "json.hpp"
#include "nicrob/cli.hpp"

namespace nicrob::cli {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

mpz_class parse_decimal(std::string_view s) {
  s = trim(s);
  if (!all_digits(s)) throw std::invalid_argument("not a decimal integer: '" + std::string(s) + "'");
  return mpz_class(std::string(s), 10);
}

}  // namespace

FactoredNumber parse_number(std::string_view text, const FactorBudget& budget) {
  text = trim(text);
  if (text.find_first_of("^*") == std::string_view::npos) {
    const mpz_class value = parse_decimal(text);
    if (value == 0) throw std::invalid_argument("n must be positive");
    return factorize(value, budget);
  }

  FactoredNumber product;
  while (true) {
    const auto star = text.find('*');
    const std::string_view term = trim(text.substr(0, star));
    const auto caret = term.find('^');
    const mpz_class base = parse_decimal(term.substr(0, caret));
    std::uint32_t exponent = 1;
    if (caret != std::string_view::npos) {
      const mpz_class e = parse_decimal(term.substr(caret + 1));
      if (!e.fits_uint_p() || e > 0xFFFFFFFFu) throw std::invalid_argument("exponent too large in '" + std::string(term) + "'");
      exponent = static_cast<std::uint32_t>(e.get_ui());
    }
    if (base == 0) throw std::invalid_argument("zero factor in '" + std::string(text) + "'");
    std::vector<PrimePower> powers;
    const FactoredNumber factored = factorize(base, budget);
    for (auto f : factored.factors()) powers.push_back({f.prime, f.exponent * exponent});
    product *= FactoredNumber(std::move(powers));
    if (star == std::string_view::npos) break;
    text.remove_prefix(star + 1);
  }
  return product;
}

std::string record_line(const ExceptionRecord& rec) {
  nlohmann::ordered_json j;
  j["n"] = rec.decimal();
  auto factors = nlohmann::ordered_json::array();
  for (const auto& f : rec.n.factors()) factors.push_back({f.prime, f.exponent});
  j["factorization"] = std::move(factors);
  j["omega_p"] = rec.omega_p;
  j["omega_q"] = rec.omega_q;
  j["core"] = rec.core.decimal();
  j["robin_violator"] = rec.robin_violator;
  j["sum_of_two_squares"] = rec.sum_two_squares;
  j["representable"] = rec.representable;
  return j.dump();
}

std::string digest_lines(const std::vector<std::string>& lines) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto feed = [&](std::string_view s) {
    for (unsigned char ch : s) {
      h ^= ch;
      h *= 0x100000001b3ull;
    }
  };
  for (const auto& line : lines) {
    feed(line);
    feed("\n");
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string digest(const std::vector<ExceptionRecord>& records) {
  std::vector<std::string> lines;
  lines.reserve(records.size());
  for (const auto& rec : records) lines.push_back(record_line(rec));
  return digest_lines(lines);
}

}  // namespace nicrob::cli
