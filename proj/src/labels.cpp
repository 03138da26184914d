#include <cctype>
#include <string_view>

#include "cg2a/autogen.hpp"

namespace cg2a {
namespace {

constexpr std::string_view kConsonants = "bdfgklmnprstvz";
constexpr std::string_view kVowels = "aeiou";

}  // namespace

std::string LabelMaker::syllables(Rng& rng) {
  std::string s;
  const auto n = uniformCount(rng, 2, 3);
  for (std::uint32_t i = 0; i < n; ++i) {
    s += pickUniform(rng, kConsonants);
    s += pickUniform(rng, kVowels);
  }
  return s + std::to_string(++next_);
}

std::string LabelMaker::conceptLabel(Rng& rng) {
  auto s = syllables(rng);
  s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s;
}

std::string LabelMaker::relationLabel(Rng& rng) { return syllables(rng); }

}  // namespace cg2a
