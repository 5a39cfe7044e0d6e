#include "tracepoly/words.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <sstream>

#include "tracepoly/errors.hpp"

namespace tracepoly {

std::string Classification::to_string() const {
  std::string s = even ? "even" : "odd";
  s += balanced ? ", balanced" : ", unbalanced";
  s += regular ? ", regular" : ", irregular";
  return s;
}

std::vector<Letter> free_reduce(const std::vector<Letter>& letters) {
  std::vector<Letter> out;
  for (const Letter& l : letters) {
    if (l.exp == 0) continue;
    if (!out.empty() && out.back().gen == l.gen) {
      out.back().exp += l.exp;
      if (out.back().exp == 0) out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

std::vector<Letter> inverse_letters(const std::vector<Letter>& letters) {
  std::vector<Letter> out(letters.rbegin(), letters.rend());
  for (auto& l : out) l.exp = -l.exp;
  return out;
}

GoodWord GoodWord::from_letters(const std::vector<Letter>& letters, bool order2) {
  std::vector<Letter> red = free_reduce(letters);
  if (order2) {
    // b^2 = 1: reduce b-exponents mod 2 until nothing changes
    while (true) {
      bool changed = false;
      for (auto& l : red)
        if (l.gen == 'b' && l.exp != 1) {
          l.exp = ((l.exp % 2) + 2) % 2;
          changed = true;
        }
      if (!changed) break;
      red = free_reduce(red);
    }
  }
  GoodWord w;
  w.order2_ = order2;
  size_t k = 0;
  if (k < red.size() && red[k].gen == 'a') w.leading_a_ = red[k++].exp;
  int expect = 1;
  for (; k < red.size(); ++k) {
    const Letter& l = red[k];
    if (l.gen == 'b') {
      int s = l.exp;
      if (order2) {
        s = expect;
      } else {
        if (s != 1 && s != -1) throw PreconditionError("not a good word: b has exponent " + std::to_string(s));
        if (!w.syl_.empty() && s == w.syl_.back().s)
          throw PreconditionError("not a good word: b-exponents do not alternate");
      }
      w.syl_.push_back({s, 0});
      expect = -s;
    } else {
      w.syl_.back().r = l.exp;
    }
  }
  return w;
}

int GoodWord::a_exponent_sum() const {
  int s = leading_a_;
  for (const auto& y : syl_) s += y.r;
  return s;
}

int GoodWord::max_abs_exponent() const {
  int m = std::abs(leading_a_);
  for (const auto& y : syl_) m = std::max(m, std::abs(y.r));
  return m;
}

std::vector<Letter> GoodWord::letters() const {
  std::vector<Letter> out;
  if (leading_a_ != 0) out.push_back({'a', leading_a_});
  for (const auto& y : syl_) {
    out.push_back({'b', y.s});
    if (y.r != 0) out.push_back({'a', y.r});
  }
  return out;
}

std::string GoodWord::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const Letter& l : letters()) {
    if (!first) os << ' ';
    first = false;
    os << l.gen;
    if (l.exp != 1) os << '^' << l.exp;
  }
  return os.str();
}

GoodWord GoodWord::with_order2(bool order2) const {
  if (order2 == order2_) return *this;
  if (!order2) {
    GoodWord w = *this;
    w.order2_ = false;
    return w;
  }
  return from_letters(letters(), true);
}

namespace {

class Lexer {
 public:
  explicit Lexer(std::string_view t) : t_(t) {}

  void skip_ws() {
    while (pos_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[pos_]))) ++pos_;
  }
  bool done() {
    skip_ws();
    return pos_ >= t_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < t_.size() ? t_[pos_] : '\0';
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  Letter letter() {
    char c = peek();
    Letter l{};
    switch (c) {
      case 'a': l = {'a', 1}; break;
      case 'b': l = {'b', 1}; break;
      case 'A': l = {'a', -1}; break;
      case 'B': l = {'b', -1}; break;
      default: fail(std::string("unexpected character '") + c + "'");
    }
    ++pos_;
    if (peek() == '^') {
      ++pos_;
      skip_ws();
      size_t start = pos_;
      if (pos_ < t_.size() && (t_[pos_] == '-' || t_[pos_] == '+')) ++pos_;
      if (pos_ < t_.size() && t_[pos_] == '{') fail("braces are not part of the grammar");
      size_t digits = pos_;
      while (pos_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[pos_]))) ++pos_;
      if (pos_ == digits) fail("missing exponent");
      l.exp *= std::stoi(std::string(t_.substr(start, pos_ - start)));
    }
    return l;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("word syntax error at position " + std::to_string(pos_) + ": " + msg);
  }

 private:
  std::string_view t_;
  size_t pos_ = 0;
};

}  // namespace

GoodWord parse_word(std::string_view text, bool order2) {
  Lexer lx(text);
  std::vector<Letter> letters;
  while (!lx.done()) {
    if (lx.peek() == '[') {
      lx.expect('[');
      Letter x = lx.letter();
      lx.expect(',');
      Letter y = lx.letter();
      lx.expect(']');
      letters.insert(letters.end(), {x, y, {x.gen, -x.exp}, {y.gen, -y.exp}});
    } else {
      letters.push_back(lx.letter());
    }
  }
  return GoodWord::from_letters(letters, order2);
}

Classification classify(const GoodWord& w) {
  Classification c{};
  c.even = w.a_exponent_sum() % 2 == 0;
  c.balanced = w.b_count() % 2 == 0;
  c.regular = w.syllables().empty() || w.syllables().front().s == 1;
  return c;
}

GoodWord star(const GoodWord& w1, const GoodWord& w2) {
  if (!w1.order2() || !w2.order2()) throw PreconditionError("star is defined for order2-mode words");
  std::vector<Letter> l2 = w2.letters();
  std::vector<Letter> l2inv = inverse_letters(l2);
  std::vector<Letter> out;
  for (const Letter& l : w1.letters()) {
    if (l.gen == 'a') {
      out.push_back(l);
    } else {
      const auto& sub = l.exp > 0 ? l2 : l2inv;
      out.insert(out.end(), sub.begin(), sub.end());
    }
  }
  return GoodWord::from_letters(out, true);
}

GoodWord to_regular(const GoodWord& w) {
  std::vector<Letter> l = w.letters();
  for (auto& x : l)
    if (x.gen == 'b') x.exp = -x.exp;
  return GoodWord::from_letters(l, w.order2());
}

GoodWord append_a(const GoodWord& w) {
  std::vector<Letter> l = w.letters();
  l.push_back({'a', 1});
  return GoodWord::from_letters(l, w.order2());
}

GoodWord invert(const GoodWord& w) { return GoodWord::from_letters(inverse_letters(w.letters()), w.order2()); }

GoodWord concat(const GoodWord& w1, const GoodWord& w2) {
  std::vector<Letter> l = w1.letters();
  std::vector<Letter> l2 = w2.letters();
  l.insert(l.end(), l2.begin(), l2.end());
  return GoodWord::from_letters(l, w1.order2() && w2.order2());
}

namespace {

// floor division for the odd-exponent rules
int half_floor(int n) { return n >= 0 ? n / 2 : -((-n + 1) / 2); }

void emit(std::vector<GenToken>& out, Gen g, int power) {
  for (int k = 0; k < std::abs(power); ++k) out.push_back({g, power > 0 ? 1 : -1});
}

}  // namespace

std::vector<GenToken> decompose_rbe(const GoodWord& w) {
  Classification c = classify(w);
  if (!c.even || !c.balanced || !c.regular)
    throw PreconditionError("decompose_rbe needs a regular balanced even word, got " + c.to_string());
  std::vector<GenToken> out;
  const auto& syl = w.syllables();
  int carry = 0;  // an a left over from the previous step, pushed into the next b a^i b^-1
  int k = w.leading_a();
  if (k % 2 == 0) {
    emit(out, Gen::G1, k / 2);
  } else {
    // a^k = a^{2*floor(k/2)} a, and a b a^i b^-1 = G3^-1 b a^{i+1} b^-1
    emit(out, Gen::G1, half_floor(k));
    emit(out, Gen::G3, -1);
    carry = 1;
  }
  for (size_t p = 0; p + 1 < syl.size(); p += 2) {
    int i = syl[p].r + carry;
    int j = syl[p + 1].r;
    carry = 0;
    bool mixed = (i - j) % 2 != 0;
    if (mixed) {
      j -= 1;
      carry = 1;
    }
    if (i % 2 == 0) {
      emit(out, Gen::G2, i / 2);
      emit(out, Gen::G1, j / 2);
    } else {
      emit(out, Gen::G2, (i - 1) / 2);
      emit(out, Gen::G3, 1);
      emit(out, Gen::G1, (j + 1) / 2);
    }
    if (mixed && p + 2 < syl.size()) emit(out, Gen::G3, -1);
  }
  if (carry != 0 && !syl.empty()) {
    // cannot happen for even words: the final pair has matching parity
    throw PreconditionError("decompose_rbe: parity bookkeeping failed");
  }
  return out;
}

std::vector<Letter> expand_tokens(const std::vector<GenToken>& tokens) {
  std::vector<Letter> out;
  for (const auto& t : tokens) {
    std::vector<Letter> g;
    switch (t.gen) {
      case Gen::G1: g = {{'a', 2}}; break;
      case Gen::G2: g = {{'b', 1}, {'a', 2}, {'b', -1}}; break;
      case Gen::G3: g = {{'b', 1}, {'a', 1}, {'b', -1}, {'a', -1}}; break;
    }
    if (t.sign < 0) g = inverse_letters(g);
    out.insert(out.end(), g.begin(), g.end());
  }
  return free_reduce(out);
}

std::string tokens_to_string(const std::vector<GenToken>& tokens) {
  std::string s = "[";
  for (size_t k = 0; k < tokens.size(); ++k) {
    if (k) s += ", ";
    s += tokens[k].gen == Gen::G1 ? "G1" : tokens[k].gen == Gen::G2 ? "G2" : "G3";
    if (tokens[k].sign < 0) s += "^-1";
  }
  return s + "]";
}

std::vector<GoodWord> enumerate_order2_words(int m, int max_exp) {
  std::vector<GoodWord> out;
  if (m < 1) return out;
  int n = m - 1;
  for (int cap = 1; cap <= std::max(1, max_exp); ++cap) {
    if (n == 0) {
      if (cap == 1) out.push_back(parse_word("b", true));
      continue;
    }
    // exponents with max |r| exactly cap, lexicographic in (-cap..-1, 1..cap)
    std::vector<int> vals;
    for (int r = -cap; r <= cap; ++r)
      if (r != 0) vals.push_back(r);
    std::vector<size_t> idx(n, 0);
    while (true) {
      int mx = 0;
      for (size_t q : idx) mx = std::max(mx, std::abs(vals[q]));
      if (mx == cap) {
        std::vector<Letter> l;
        for (int q = 0; q < n; ++q) {
          l.push_back({'b', 1});
          l.push_back({'a', vals[idx[q]]});
        }
        l.push_back({'b', 1});
        out.push_back(GoodWord::from_letters(l, true));
      }
      int q = n - 1;
      while (q >= 0 && ++idx[q] == vals.size()) idx[q--] = 0;
      if (q < 0) break;
    }
  }
  return out;
}

GoodWord random_good_word(std::mt19937_64& rng, int max_syllables, int max_exp, bool order2) {
  if (max_exp < 1) throw PreconditionError("random_good_word: max_exp must be >= 1");
  std::uniform_int_distribution<int> msyl(1, std::max(1, max_syllables));
  std::uniform_int_distribution<int> ex(-max_exp, max_exp);
  std::uniform_int_distribution<int> coin(0, 1);
  int m = msyl(rng);
  int s = coin(rng) ? 1 : -1;
  std::vector<Letter> l{{'a', ex(rng)}};
  for (int k = 0; k < m; ++k) {
    l.push_back({'b', s});
    s = -s;
    int r = ex(rng);
    while (k + 1 < m && r == 0) r = ex(rng);
    l.push_back({'a', r});
  }
  return GoodWord::from_letters(l, order2);
}

}  // namespace tracepoly
