#include "tracepoly/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "tracepoly/discreteness.hpp"
#include "tracepoly/errors.hpp"
#include "tracepoly/numeric.hpp"
#include "tracepoly/parallel.hpp"
#include "tracepoly/quatalg.hpp"
#include "tracepoly/zeroset.hpp"

namespace tracepoly {

namespace {

RatPoly2 X() { return RatPoly2::first(Basis::XZ); }
RatPoly2 Z() { return RatPoly2::second(Basis::XZ); }
RatPoly2 K(long c) { return RatPoly2::constant(c, Basis::XZ); }

std::string trim(std::string s) {
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  return s;
}

double to_double(const std::string& s) {
  size_t pos = 0;
  double v = std::stod(s, &pos);
  if (pos != s.size()) throw std::invalid_argument(s);
  return v;
}

}  // namespace

cplx parse_complex(const std::string& text) {
  std::string s = trim(text);
  try {
    if (s.empty()) throw std::invalid_argument(s);
    auto comma = s.find(',');
    if (comma != std::string::npos) return {to_double(s.substr(0, comma)), to_double(s.substr(comma + 1))};
    if (s.back() != 'i') return {to_double(s), 0};
    std::string body = s.substr(0, s.size() - 1);
    size_t split = std::string::npos;
    for (size_t k = body.size(); k-- > 1;)
      if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
        split = k;
        break;
      }
    auto imag = [](const std::string& t) {
      if (t.empty() || t == "+") return 1.0;
      if (t == "-") return -1.0;
      return to_double(t);
    };
    if (split == std::string::npos) return {0, imag(body)};
    return {to_double(body.substr(0, split)), imag(body.substr(split))};
  } catch (const std::exception&) {
    throw ParseError("cannot parse complex number '" + text + "'");
  }
}

std::vector<Table1Row> table1() {
  RatPoly2 x = X(), z = Z();
  RatPoly2 cubic = x * x + z.pow(3) - (x * z * z).scale(2) + (x - K(1)) * x * z;
  std::vector<std::pair<std::string, RatPoly2>> rows = {
      {"bab", z * (z - x)},
      {"ba^2b", (x + K(4)) * (z - x) * z},
      {"babab", (x - z + K(1)).pow(2) * z},
      {"baba^-1b", z * (K(1) - x.scale(2) + z * z - (x - K(2)) * z)},
      {"baba^2b", z * (K(1) + x * (x + K(1)) * (x + K(4)) - (x + K(4)) * (x.scale(2) + K(1)) * z + (x + K(4)) * z * z)},
      {"ba^2ba^2b", (x * x - (z - K(4)) * x - z.scale(4) + K(1)).pow(2) * z},
      {"bababab", z * (z - x) * (x - z + K(2)).pow(2)},
      {"bababa^-1b", z * cubic},
      {"baba^2ba^-1b", z * (x + K(4)) * cubic},
      {"ba^-2bababa^-2bab",
       z.pow(3) * (z - x) * (x + K(4)) *
           (x * (z * z - z.scale(3) - K(4)) - x * x * (z + K(1)) + (z * z).scale(4) + z.scale(4) + K(1))},
  };
  std::vector<Table1Row> out;
  for (auto& [w, p] : rows) out.push_back({w, p, trace_poly(parse_word(w, true))});
  return out;
}

bool VerifyReport::ok() const {
  for (const SweepResult& s : sweeps)
    if (s.failures) return false;
  return true;
}

nlohmann::json VerifyReport::to_json() const {
  nlohmann::json a = nlohmann::json::array();
  for (const SweepResult& s : sweeps)
    a.push_back({{"name", s.name},
                 {"checks", s.checks},
                 {"failures", s.failures},
                 {"worst", s.worst},
                 {"first_failure", s.first_failure}});
  return {{"ok", ok()}, {"sweeps", a}};
}

namespace {

nlohmann::json cj(cplx z) { return nlohmann::json::array({z.real(), z.imag()}); }
nlohmann::json cj(cplxl z) { return cj(cplx(static_cast<double>(z.real()), static_cast<double>(z.imag()))); }

struct Sampler {
  std::mt19937_64 rng;
  std::uniform_real_distribution<double> box{-2.0, 2.0};

  explicit Sampler(unsigned long long seed) : rng(seed) {}

  cplxl c() { return {box(rng), box(rng)}; }

  GroupParams params() {
    while (true) {
      GroupParams p{c(), c(), c()};
      if (std::abs(p.beta) < 0.2L || std::abs(p.beta + cplxl(4)) < 0.2L) continue;
      if (std::abs(p.gamma) < 0.05L || std::abs(p.gamma - p.beta) < 0.05L) continue;
      return p;
    }
  }
};

void record(SweepResult& s, double dev, double tol, const std::function<nlohmann::json()>& what) {
  ++s.checks;
  s.worst = std::max(s.worst, dev);
  if (!(dev < tol)) {
    if (!s.failures) s.first_failure = what();
    ++s.failures;
  }
}

// The word actually represented by the quaternion pipeline.
GoodWord core_word(const GoodWord& w) {
  Classification c = classify(w);
  GoodWord core = w.with_order2(false);
  if (!c.regular) core = to_regular(core);
  if (!c.even) core = append_a(core);
  return core;
}

SweepResult sweep(const char* name) {
  SweepResult s;
  s.name = name;
  return s;
}

double rel(cplxl a, cplxl b) { return static_cast<double>(rel_dev(a, b)); }

}  // namespace

VerifyReport run_verify(const VerifyOptions& opt) {
  VerifyReport rep;
  Sampler S(opt.seed);
  int n = opt.samples;

  SweepResult trace = sweep("trace"), comm = sweep("commutator"), indep = sweep("beta2-independence");
  for (int i = 0; i < n; ++i) {
    GoodWord w = random_good_word(S.rng, 6, 4);
    GroupParams p = S.params();
    WordPolys wp = word_polys(w, opt.pipeline);
    CanonicalPair cp = canonical_pair(p);
    cplxl r = wp.r.eval_ld(p.beta, p.gamma), s = wp.s.eval_ld(p.beta, p.gamma), pv = wp.p.eval_ld(p.beta, p.gamma);
    Mat2 core = eval_word_matrix(cp.A, cp.B, core_word(w));
    cplxl Q = csqrt(p.beta * (p.beta + cplxl(4)));
    cplxl want = wp.balanced ? cplxl(2) * r : (cp.a + cp.d) * r + (cp.a - cp.d) * s * Q;
    auto what = [&] {
      return nlohmann::json{{"word", w.to_string()}, {"beta", cj(p.beta)}, {"beta2", cj(p.beta2)}, {"gamma", cj(p.gamma)}};
    };
    record(trace, rel(core.trace(), want), 1e-9, what);
    Mat2 W = eval_word_matrix(cp.A, cp.B, w);
    record(comm, rel(commutator(cp.A, W).trace() - cplxl(2), pv), 1e-9, what);
    for (int k = 0; k < 3; ++k) {
      GroupParams q = p;
      q.beta2 = S.c();
      CanonicalPair cq = canonical_pair(q);
      Mat2 Wq = eval_word_matrix(cq.A, cq.B, w);
      record(indep, rel(commutator(cq.A, Wq).trace() - cplxl(2), pv), 1e-9, [&] {
        auto j = what();
        j["beta2"] = cj(q.beta2);
        return j;
      });
    }
  }

  SweepResult norm = sweep("norm"), hom = sweep("homomorphism");
  // balanced companion of a random word, so every sample lands in V0
  auto random_v0 = [&](int syl, int ex) {
    GoodWord c = core_word(random_good_word(S.rng, syl, ex));
    if (!classify(c).balanced) c = concat(c, GoodWord::from_letters({{'b', -1}}, false));
    return std::make_pair(c, word_to_quat(c));
  };
  for (int i = 0; i < n; ++i) {
    auto [w, q] = random_v0(4, 3);
    record(norm, qnorm(q) == RatPoly2::constant(1, Basis::XZ) ? 0.0 : 1.0, 0.5,
           [&] { return nlohmann::json{{"word", w.to_string()}}; });
    auto [w2, q2] = random_v0(2, 3);
    GroupParams p = S.params();
    double d = static_cast<double>(rel_dev(phi_eval(qmul(q, q2), p), phi_eval(q, p) * phi_eval(q2, p)));
    d = std::max(d, static_cast<double>(rel_dev(psi_eval(rho(q), p.lambda(), p.lambda2(), p.mu()), phi_eval(q, p))));
    record(hom, d, 1e-9, [&] {
      return nlohmann::json{{"word", w.to_string()}, {"word2", w2.to_string()}, {"beta", cj(p.beta)}, {"beta2", cj(p.beta2)}, {"gamma", cj(p.gamma)}};
    });
  }

  SweepResult comp = sweep("composition");
  for (int i = 0; i < (n + 9) / 10; ++i) {
    GoodWord w1 = random_good_word(S.rng, 3, 2, true), w2 = random_good_word(S.rng, 3, 2, true);
    RatPoly2 lhs = trace_poly(star(w1, w2), opt.pipeline);
    RatPoly2 rhs = trace_poly(w1, opt.pipeline).substitute(X(), trace_poly(w2, opt.pipeline));
    record(comp, lhs == rhs ? 0.0 : 1.0, 0.5,
           [&] { return nlohmann::json{{"w1", w1.to_string()}, {"w2", w2.to_string()}}; });
  }

  SweepResult lim = sweep("limits");
  if (n > 0) {
    std::vector<long double> seq;
    for (int k = 1; k <= 6; ++k) seq.push_back(std::pow(10.0L, -k));
    LimitReport a = verify_limits(gen_w3(), 0, 1, seq);
    LimitReport b = verify_second_limit(gen_w3(), 0, seq);
    record(lim, a.decreasing() && b.decreasing() ? 0.0 : 1.0, 0.5, [&] {
      return nlohmann::json{{"first", a.deviations}, {"second", b.deviations}};
    });
  }

  rep.sweeps = {trace, comm, indep, norm, hom, comp, lim};
  return rep;
}

namespace {

std::string poly_text(const RatPoly2& p) { return p.to_string("x", "z"); }
std::string p_text(const RatPoly2& p) { return p.to_string("β", "γ"); }

std::string read_arg_or_file(const std::string& s) {
  if (!s.empty() && s[0] == '@') {
    std::ifstream f(s.substr(1));
    if (!f) throw Error("cannot read " + s.substr(1));
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
  }
  return s;
}

Quat quat_arg(const std::string& s) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_arg_or_file(s));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("bad quaternion JSON: ") + e.what());
  }
  return quat_from_json(j);
}

std::vector<long> int_list(const std::string& s) {
  std::vector<long> out;
  std::stringstream ss(trim(s));
  std::string tok;
  try {
    while (std::getline(ss, tok, ',')) {
      size_t pos = 0;
      out.push_back(std::stol(tok, &pos));
      if (pos != tok.size()) throw std::invalid_argument(tok);
    }
  } catch (const std::exception&) {
    throw ParseError("expected a comma-separated integer list, got '" + s + "'");
  }
  if (out.empty()) throw ParseError("empty integer list");
  return out;
}

int cmd_poly(const std::string& word, bool order2, bool json, bool table, std::ostream& out) {
  if (table) {
    auto rows = table1();
    bool all = true;
    nlohmann::json arr = nlohmann::json::array();
    for (const Table1Row& r : rows) {
      all = all && r.match();
      if (json)
        arr.push_back({{"word", r.word}, {"p", to_json(r.computed)}, {"text", r.computed.to_string("beta", "gamma")}, {"match", r.match()}});
      else
        out << (r.match() ? "ok   " : "DIFF ") << r.word << "  p = " << p_text(r.computed) << '\n';
    }
    if (json) out << nlohmann::json{{"rows", arr}, {"all_match", all}}.dump(2) << '\n';
    else out << (all ? "all 10 rows match Table 1\n" : "MISMATCH against Table 1\n");
    return all ? kExitOk : kExitFailure;
  }
  if (word.empty()) throw ParseError("poly: a word or --table1 is required");
  GoodWord w = parse_word(word, order2);
  WordPolys wp = word_polys(w);
  bool norm_ok = true;
  Classification c = classify(w);
  std::optional<Quat> q;
  if (c.even && c.balanced && c.regular) {
    q = word_to_quat(w);
    norm_ok = qnorm(*q) == RatPoly2::constant(1, Basis::XZ);
  }
  if (json) {
    nlohmann::json j = word_bundle_json(wp, norm_ok, true);
    if (q) j["quaternion"] = to_json(*q);
    out << j.dump(2) << '\n';
    return kExitOk;
  }
  out << "word: " << w.to_string() << (order2 ? " (order2 mode)" : "") << '\n';
  out << "class: " << c.to_string() << '\n';
  if (q) out << "quaternion: " << q->to_string() << '\n';
  out << "r = " << poly_text(wp.r) << '\n'
      << "s = " << poly_text(wp.s) << '\n'
      << "t = " << poly_text(wp.t) << '\n'
      << "w = " << poly_text(wp.w) << '\n';
  if (wp.g) out << "g = " << poly_text(*wp.g) << '\n';
  out << "p = " << p_text(wp.p) << '\n';
  return kExitOk;
}

int cmd_verify(const VerifyOptions& vo, bool json, std::ostream& out, std::ostream& err) {
  err << "verify: seed " << vo.seed << ", samples " << vo.samples << '\n';
  if (vo.samples == 0) err << "warning: --samples 0, every sweep passes vacuously\n";
  VerifyReport r = run_verify(vo);
  if (json) {
    nlohmann::json j = r.to_json();
    j["seed"] = vo.seed;
    j["samples"] = vo.samples;
    out << j.dump(2) << '\n';
  } else {
    for (const SweepResult& s : r.sweeps) {
      out << (s.failures ? "FAIL " : "ok   ") << s.name << ": " << s.checks << " checks, " << s.failures
          << " failures, worst " << s.worst << '\n';
      if (s.failures) out << "     first failure: " << s.first_failure.dump() << '\n';
    }
  }
  return r.ok() ? kExitOk : kExitFailure;
}

struct ScanArgs {
  std::string beta = "0";
  int max_syllables = 5, max_exp = 4;
  size_t max_words = 10000;
  std::string out, json_out;
  int grid = 0;
  std::string window = "-2,2,-2,2";
  std::string raster_out;
  int depth = 30, budget = 400;
};

int cmd_scan(const ScanArgs& a, bool json, std::ostream& out) {
  cplx beta = parse_complex(a.beta);
  EnumSpec spec{a.max_syllables, a.max_exp, a.max_words};
  ZeroSetScan s = scan_roots(beta, spec);
  if (!a.out.empty()) write_roots_csv(s, a.out);
  if (!a.json_out.empty()) {
    std::ofstream f(a.json_out);
    if (!f) throw Error("cannot write " + a.json_out);
    f << to_json(s).dump(2) << '\n';
  }
  nlohmann::json summary = {{"beta", cj(beta)},
                            {"words_scanned", s.words_scanned},
                            {"roots", s.roots.size()},
                            {"max_residual", s.max_residual}};
  double maxmod = 0;
  for (const ZeroRoot& r : s.roots) maxmod = std::max(maxmod, std::abs(r.gamma));
  summary["max_modulus"] = maxmod;
  if (a.grid > 0) {
    std::stringstream ss(a.window);
    std::vector<double> wv;
    std::string tok;
    while (std::getline(ss, tok, ',')) wv.push_back(parse_complex(tok).real());
    if (wv.size() != 4) throw ParseError("--window expects re_min,re_max,im_min,im_max");
    Window win{wv[0], wv[1], wv[2], wv[3]};
    KillerOptions ko;
    ko.max_depth = a.depth;
    ko.word_budget = static_cast<size_t>(a.budget);
    Raster r = classify_grid(beta, win, a.grid, a.grid, ko, s.roots);
    if (!a.raster_out.empty()) {
      write_raster_pgm(r, a.raster_out);
      std::ofstream f(a.raster_out + ".json");
      f << raster_metadata(r).dump(2) << '\n';
    }
    summary["raster"] = raster_metadata(r);
  }
  if (json) {
    out << summary.dump(2) << '\n';
  } else {
    out << "beta = " << beta << ": " << s.words_scanned << " words, " << s.roots.size()
        << " distinct roots, max |gamma| = " << maxmod << ", max residual = " << s.max_residual << '\n';
    if (summary.contains("raster")) out << "raster counts: " << summary["raster"]["counts"].dump() << '\n';
    if (!a.out.empty()) out << "roots written to " << a.out << '\n';
  }
  return kExitOk;
}

struct DiscreteArgs {
  std::string beta = "0", gamma;
  int depth = 30, budget = 400, max_syllables = 4, max_exp = 3;
  std::string axis_word, root_word, multiplier_word;
};

int cmd_discrete(const DiscreteArgs& a, bool json, std::ostream& out) {
  if (!a.multiplier_word.empty()) {
    GoodWord w = parse_word(a.multiplier_word, true);
    RatPoly2 m = multiplier_at_zero(w);
    if (json)
      out << nlohmann::json{{"word", w.to_string()}, {"multiplier", to_json(m)}, {"text", m.to_string("beta", "gamma")}}.dump(2) << '\n';
    else
      out << "multiplier at 0 of " << w.to_string() << ": " << m.to_string("β", "γ") << '\n';
    return kExitOk;
  }
  if (a.gamma.empty()) throw ParseError("discrete: --gamma is required");
  cplx beta = parse_complex(a.beta), gamma = parse_complex(a.gamma);
  if (!a.axis_word.empty() || !a.root_word.empty()) {
    nlohmann::json j = {{"beta", cj(beta)}, {"gamma", cj(gamma)}};
    if (!a.axis_word.empty())
      j["axis_coincidence"] = axis_coincidence(parse_word(a.axis_word), GaussRat::from_complex(beta), GaussRat::from_complex(gamma));
    if (!a.root_word.empty())
      j["multiple_root"] = multiple_root_check(parse_word(a.root_word, true), GaussRat::from_complex(beta), GaussRat::from_complex(gamma));
    out << (json ? j.dump(2) : j.dump()) << '\n';
    return kExitOk;
  }
  KillerOptions ko;
  ko.max_depth = a.depth;
  ko.word_budget = static_cast<size_t>(a.budget);
  ko.max_syllables = a.max_syllables;
  ko.max_exp = a.max_exp;
  auto c = killer_search(beta, gamma, ko);
  if (c) {
    nlohmann::json j = c->to_json();
    j["result"] = "certificate";
    out << (json ? j.dump(2) : j.dump()) << '\n';
    return kExitNonDiscrete;
  }
  nlohmann::json j = {{"result", "inconclusive"}, {"beta", cj(beta)}, {"gamma", cj(gamma)}, {"max_depth", a.depth}, {"word_budget", a.budget}};
  out << (json ? j.dump(2) : j.dump()) << '\n';
  return kExitOk;
}

int cmd_units(int max_degree, const std::string& bound, bool json, std::ostream& out) {
  Rational b(bound);
  b.canonicalize();
  std::vector<Quat> units = enumerate_units(max_degree, b);
  if (json) {
    nlohmann::json a = nlohmann::json::array();
    for (const Quat& q : units) a.push_back(to_json(q));
    out << nlohmann::json{{"max_degree", max_degree}, {"count", units.size()}, {"units", a}}.dump(2) << '\n';
  } else {
    for (const Quat& q : units)
      out << "(" << q.r.to_string("u", "v") << ", " << q.s.to_string("u", "v") << ", " << q.t.to_string("u", "v")
          << ", " << q.w.to_string("u", "v") << ")\n";
    out << units.size() << " units of degree <= " << max_degree << '\n';
  }
  return kExitOk;
}

int cmd_arith(const std::string& minpoly, const std::string& v, bool json, std::ostream& out) {
  ArithmeticityResult r = arithmeticity_screen(int_list(minpoly), int_list(v));
  out << (json ? r.to_json().dump(2) : r.to_json().dump()) << '\n';
  return r.pass ? kExitOk : kExitFailure;
}

int cmd_quat(const std::string& op, const std::vector<std::string>& operands, const std::string& word, bool json,
             std::ostream& out) {
  auto emit = [&](const Quat& q) {
    if (json)
      out << to_json(q).dump(2) << '\n';
    else
      out << q.to_string() << '\n';
  };
  auto need = [&](size_t k) {
    if (operands.size() != k) throw ParseError("quat " + op + " expects " + std::to_string(k) + " operand(s)");
  };
  if (op == "word") {
    if (word.empty()) throw ParseError("quat word needs --word");
    emit(word_to_quat(parse_word(word)));
  } else if (op == "gens") {
    emit(gen_w1());
    emit(gen_w2());
    emit(gen_w3());
  } else if (op == "mul") {
    need(2);
    emit(qmul(quat_arg(operands[0]), quat_arg(operands[1])));
  } else if (op == "conj") {
    need(1);
    emit(qconj(quat_arg(operands[0])));
  } else if (op == "norm") {
    need(1);
    RatPoly2 n = qnorm(quat_arg(operands[0]));
    out << (json ? to_json(n).dump(2) : n.to_string()) << '\n';
  } else if (op == "rho") {
    need(1);
    emit(rho(quat_arg(operands[0])));
  } else if (op == "rho-inv") {
    need(1);
    emit(rho_inv(quat_arg(operands[0])));
  } else if (op == "order") {
    need(1);
    OrderWitness w = in_order_O(quat_arg(operands[0]));
    nlohmann::json j = {{"member", w.member}, {"form_member", w.form_member}, {"agree", w.agree()}};
    if (w.form_member) {
      j["integral_part"] = to_json(w.integral_part);
      j["P"] = to_json(w.P);
    }
    out << (json ? j.dump(2) : j.dump()) << '\n';
    return w.member ? kExitOk : kExitFailure;
  } else {
    throw ParseError("unknown quat operation '" + op + "'");
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Good-word trace polynomials of two-generator Mobius groups", "tracepoly"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "machine-readable output");

  std::string word;
  bool order2 = false, table = false;
  auto* poly = app.add_subcommand("poly", "polynomials of a good word");
  poly->add_option("word", word, "word, e.g. \"b a^2 b^-1\" or \"[b,a]\"");
  poly->add_flag("--order2", order2, "g has order two (b = b^-1)");
  poly->add_flag("--table1", table, "recompute the ten Table 1 polynomials");
  poly->add_flag("--json", json);

  VerifyOptions vo;
  bool flip = false;
  auto* verify = app.add_subcommand("verify", "randomized property sweeps against the matrix oracle");
  verify->add_option("--samples", vo.samples)->check(CLI::NonNegativeNumber);
  verify->add_option("--seed", vo.seed);
  verify->add_flag("--inject-sign-flip", flip)->group("");  // negative control
  verify->add_flag("--json", json);

  ScanArgs sa;
  auto* scan = app.add_subcommand("scan", "roots of good-word polynomials in the gamma plane");
  scan->add_option("--beta", sa.beta);
  scan->add_option("--max-syllables", sa.max_syllables)->check(CLI::PositiveNumber);
  scan->add_option("--max-exp", sa.max_exp)->check(CLI::PositiveNumber);
  scan->add_option("--max-words", sa.max_words);
  scan->add_option("--out", sa.out, "roots CSV");
  scan->add_option("--json-out", sa.json_out, "roots JSON");
  scan->add_option("--grid", sa.grid, "classify an N x N grid of gamma values");
  scan->add_option("--window", sa.window, "re_min,re_max,im_min,im_max");
  scan->add_option("--raster-out", sa.raster_out, "PGM raster (plus .json sidecar)");
  scan->add_option("--depth", sa.depth);
  scan->add_option("--budget", sa.budget);
  scan->add_flag("--json", json);

  DiscreteArgs da;
  auto* disc = app.add_subcommand("discrete", "search for a non-discreteness certificate");
  disc->add_option("--beta", da.beta);
  disc->add_option("--gamma", da.gamma);
  disc->add_option("--depth", da.depth)->check(CLI::NonNegativeNumber);
  disc->add_option("--budget", da.budget)->check(CLI::NonNegativeNumber);
  disc->add_option("--max-syllables", da.max_syllables)->check(CLI::PositiveNumber);
  disc->add_option("--max-exp", da.max_exp)->check(CLI::PositiveNumber);
  disc->add_option("--axis", da.axis_word, "test t_w = w_w = 0 for this word");
  disc->add_option("--multiple-root", da.root_word, "test whether gamma is a multiple root of p_w");
  disc->add_option("--multiplier", da.multiplier_word, "print the multiplier at 0 of p_w");
  disc->add_flag("--json", json);

  int max_degree = 2;
  std::string bound = "2";
  auto* units = app.add_subcommand("units", "norm-one quaternions of small degree");
  units->add_option("--max-degree", max_degree)->check(CLI::Range(0, 3));
  units->add_option("--bound", bound, "coefficient bound");
  units->add_flag("--json", json);

  std::string minpoly, vexpr = "0,1";
  auto* arith = app.add_subcommand("arith", "arithmeticity screen");
  arith->add_option("--minpoly", minpoly, "ascending integer coefficients, monic")->required();
  arith->add_option("--v", vexpr, "v as a polynomial in u, ascending integer coefficients");
  arith->add_flag("--json", json);

  std::string op;
  std::vector<std::string> operands;
  std::string qword;
  auto* quat = app.add_subcommand("quat", "raw quaternion operations");
  quat->add_option("op", op, "word | gens | mul | conj | norm | rho | rho-inv | order")->required();
  quat->add_option("operands", operands, "quaternion JSON or @file");
  quat->add_option("--word", qword);
  quat->add_flag("--json", json);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*poly) return cmd_poly(word, order2, json, table, out);
    if (*verify) {
      if (flip) vo.pipeline.unbalanced_sign = 1;
      return cmd_verify(vo, json, out, err);
    }
    if (*scan) return cmd_scan(sa, json, out);
    if (*disc) return cmd_discrete(da, json, out);
    if (*units) return cmd_units(max_degree, bound, json, out);
    if (*arith) return cmd_arith(minpoly, vexpr, json, out);
    if (*quat) return cmd_quat(op, operands, qword, json, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace tracepoly
