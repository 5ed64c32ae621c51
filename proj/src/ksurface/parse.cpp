#include <array>
#include <cctype>

#include "dioph/ksurface/surface.hpp"
#include "dioph/qalg/parse.hpp"

namespace dioph::ksurface {

namespace {

std::size_t skip_ws(std::string_view s, std::size_t i) {
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  return i;
}

}  // namespace

WeierstrassSurface parse_surface(std::string_view text) {
  using qalg::ParseError;
  const std::string input(text);
  static constexpr std::array<std::string_view, 7> kNames = {"a1", "a2", "a3", "a4", "a6", "A", "B"};
  std::array<std::optional<RatFunc>, 7> slot;
  bool any = false;

  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(';', start);
    if (end == std::string_view::npos) end = text.size();
    std::size_t i = skip_ws(text, start);
    if (i < end) {
      std::size_t name_begin = i;
      while (i < end && std::isalnum(static_cast<unsigned char>(text[i]))) ++i;
      std::string_view name = text.substr(name_begin, i - name_begin);
      auto it = std::find(kNames.begin(), kNames.end(), name);
      if (it == kNames.end()) throw ParseError(input, name_begin, "expected one of a1, a2, a3, a4, a6, A, B");
      std::size_t idx = static_cast<std::size_t>(it - kNames.begin());
      if (slot[idx]) throw ParseError(input, name_begin, "coefficient given twice");
      i = skip_ws(text, i);
      if (i >= end || text[i] != '=') throw ParseError(input, i, "expected '='");
      ++i;
      try {
        slot[idx] = qalg::parse_ratfunc(text.substr(i, end - i));
      } catch (const ParseError& e) {
        throw ParseError(input, i + e.position(), e.what());
      }
      any = true;
    }
    start = end + 1;
  }
  if (!any) throw ParseError(input, 0, "no coefficients given");

  bool short_form = slot[5] || slot[6];
  bool long_form = std::any_of(slot.begin(), slot.begin() + 5, [](const auto& s) { return s.has_value(); });
  if (short_form && long_form) throw ParseError(input, 0, "mix of short (A, B) and long (a1..a6) coefficients");
  auto get = [&](std::size_t k) { return slot[k].value_or(RatFunc(0)); };
  if (short_form) return WeierstrassSurface::short_form(get(5), get(6));
  return {get(0), get(1), get(2), get(3), get(4)};
}

}  // namespace dioph::ksurface
