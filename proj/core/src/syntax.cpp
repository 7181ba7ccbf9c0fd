#include "tnormlab/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <string>
#include <vector>

namespace tnormlab {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string number_text(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

// Splits on `sep` at bracket/paren depth zero.
std::vector<std::string_view> split_top(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (depth < 0) throw InvalidSpec("unbalanced brackets in '" + std::string(s) + "'");
    if (c == sep && depth == 0) {
      parts.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  if (depth != 0) throw InvalidSpec("unbalanced brackets in '" + std::string(s) + "'");
  parts.push_back(s.substr(start));
  return parts;
}

TNormSpec parse_osum(std::string_view body) {
  body = trim(body);
  if (body.size() < 2 || body.front() != '[' || body.back() != ']') {
    throw InvalidSpec("ordinal sum must be written osum:[a,e,inner;...]");
  }
  body = body.substr(1, body.size() - 2);
  std::vector<Summand> summands;
  for (std::string_view part : split_top(body, ';')) {
    const auto fields = split_top(trim(part), ',');
    if (fields.size() != 3) {
      throw InvalidSpec("ordinal-sum summand needs three fields a,e,inner: '" + std::string(part) +
                        "'");
    }
    summands.push_back(Summand{parse_number(fields[0]), parse_number(fields[1]),
                               parse_tnorm_spec(fields[2])});
  }
  return TNormSpec::ordinal_sum(std::move(summands));
}

}  // namespace

double parse_number(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw InvalidSpec("not a number: '" + std::string(text) + "'");
  }
  return v;
}

TNormSpec parse_tnorm_spec(std::string_view text) {
  text = trim(text);
  const auto colon = text.find(':');
  const std::string head = lower(trim(text.substr(0, colon)));
  const std::string_view arg = colon == std::string_view::npos ? std::string_view{}
                                                               : text.substr(colon + 1);
  const bool has_arg = colon != std::string_view::npos;

  auto no_arg = [&](TNormSpec s) {
    if (has_arg) throw InvalidSpec("'" + head + "' takes no parameter");
    return s;
  };

  if (head == "min" || head == "minimum") return no_arg(TNormSpec::minimum());
  if (head == "prod" || head == "product") return no_arg(TNormSpec::product());
  if (head == "luk" || head == "lukasiewicz") return no_arg(TNormSpec::lukasiewicz());
  if (head == "drastic") return no_arg(TNormSpec::drastic());
  if (!has_arg) throw InvalidSpec("unknown t-norm '" + std::string(text) + "'");
  if (head == "ss") return TNormSpec::schweizer_sklar(parse_number(arg));
  if (head == "cshelf") return TNormSpec::cshelf(parse_number(arg));
  if (head == "osum") return parse_osum(arg);
  if (head == "expr") return TNormSpec::expr(dsl::parse(arg), ZeroGuard::Off);
  if (head == "gexpr") return TNormSpec::expr(dsl::parse(arg), ZeroGuard::On);
  throw InvalidSpec("unknown t-norm '" + std::string(text) + "'");
}

std::string TNormSpec::to_string() const {
  return std::visit(
      Overloaded{
          [](const family::Minimum&) -> std::string { return "min"; },
          [](const family::Product&) -> std::string { return "prod"; },
          [](const family::Lukasiewicz&) -> std::string { return "luk"; },
          [](const family::Drastic&) -> std::string { return "drastic"; },
          [](const family::SchweizerSklar& s) { return "ss:" + number_text(s.beta); },
          [](const family::CShelf& s) { return "cshelf:" + number_text(s.c); },
          [](const family::OrdinalSum& os) {
            std::string out = "osum:[";
            for (std::size_t i = 0; i < os.summands.size(); ++i) {
              const Summand& s = os.summands[i];
              if (i) out += ';';
              out += number_text(s.lower) + "," + number_text(s.upper) + "," + s.inner.to_string();
            }
            return out + "]";
          },
          [](const family::Expr& e) {
            return (e.zero_guard ? "gexpr:" : "expr:") + dsl::to_string(e.expression);
          },
      },
      variant());
}

}  // namespace tnormlab
