#pragma once

#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace tracepoly {

struct Letter {
  char gen;  // 'a' or 'b'
  int exp;
  bool operator==(const Letter&) const = default;
};

struct Syllable {
  int s;  // exponent of b, +1 or -1
  int r;  // exponent of a following that b
  bool operator==(const Syllable&) const = default;
};

struct Classification {
  bool even;
  bool balanced;
  bool regular;
  std::string to_string() const;
};

// b^{s1} a^{r1} ... b^{sm} a^{rm}, optionally preceded by a^{leading_a}.
class GoodWord {
 public:
  GoodWord() = default;

  // Normalizes an arbitrary letter sequence; throws PreconditionError if the
  // reduced word is not good (and order2 is off).
  static GoodWord from_letters(const std::vector<Letter>& letters, bool order2);

  int leading_a() const { return leading_a_; }
  const std::vector<Syllable>& syllables() const { return syl_; }
  bool order2() const { return order2_; }
  size_t b_count() const { return syl_.size(); }
  bool is_identity() const { return syl_.empty() && leading_a_ == 0; }
  int a_exponent_sum() const;
  int max_abs_exponent() const;

  std::vector<Letter> letters() const;
  std::string to_string() const;
  GoodWord with_order2(bool order2) const;

  bool operator==(const GoodWord&) const = default;

 private:
  int leading_a_ = 0;
  std::vector<Syllable> syl_;
  bool order2_ = false;
};

// Free reduction: merges adjacent equal generators and drops zero exponents.
std::vector<Letter> free_reduce(const std::vector<Letter>& letters);
std::vector<Letter> inverse_letters(const std::vector<Letter>& letters);

GoodWord parse_word(std::string_view text, bool order2 = false);
Classification classify(const GoodWord& w);

GoodWord star(const GoodWord& w1, const GoodWord& w2);
GoodWord to_regular(const GoodWord& w);
GoodWord append_a(const GoodWord& w);
GoodWord invert(const GoodWord& w);
GoodWord concat(const GoodWord& w1, const GoodWord& w2);

enum class Gen { G1, G2, G3 };

struct GenToken {
  Gen gen;
  int sign;  // +1 or -1
  bool operator==(const GenToken&) const = default;
};

std::vector<GenToken> decompose_rbe(const GoodWord& w);
std::vector<Letter> expand_tokens(const std::vector<GenToken>& tokens);
std::string tokens_to_string(const std::vector<GenToken>& tokens);

// Order2-mode words b a^{r1} b ... a^{r(m-1)} b with 1 <= |r| <= max_exp.
// Leading and trailing powers of a do not change the trace polynomial, so
// they are omitted.  Ordered by max |r|, then lexicographically.
std::vector<GoodWord> enumerate_order2_words(int m, int max_exp);

// 1..max_syllables b-syllables, interior a-exponents in [-max_exp, max_exp]\{0},
// leading and trailing a-exponents possibly zero.
GoodWord random_good_word(std::mt19937_64& rng, int max_syllables, int max_exp, bool order2 = false);

}  // namespace tracepoly
