#include "tracepoly/zeroset.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "tracepoly/errors.hpp"
#include "tracepoly/parallel.hpp"
#include "tracepoly/wordpoly.hpp"

namespace tracepoly {

namespace {

using CL = std::complex<long double>;

struct WordRoots {
  std::vector<ZeroRoot> roots;
  double residual = 0;
};

WordRoots roots_of(const GoodWord& w, cplx beta, double radius) {
  WordRoots out;
  std::string name = w.to_string();
  RatPoly2 p = trace_poly(w);
  std::vector<GaussRat> c = p.coeffs_in_second(GaussRat::from_complex(beta));
  while (!c.empty() && c.back().is_zero()) c.pop_back();
  if (c.empty()) return out;  // p vanishes identically at this beta
  size_t k = 0;
  while (c[k].is_zero()) ++k;
  if (k > 0) out.roots.push_back({0, name, static_cast<int>(k)});
  std::vector<GaussRat> rest(c.begin() + k, c.end());
  std::vector<CL> cl;
  for (const GaussRat& g : c) cl.push_back(g.to_complex_ld());
  for (const Root& r : roots_exact(rest, radius)) {
    out.roots.push_back({r.value, name, r.multiplicity});
    CL z(r.value.real(), r.value.imag()), acc = 0;
    for (auto it = cl.rbegin(); it != cl.rend(); ++it) acc = acc * z + *it;
    out.residual = std::max(out.residual, static_cast<double>(std::abs(acc)));
  }
  return out;
}

// Keeps the first root seen within `radius` of any other.
class Dedup {
 public:
  explicit Dedup(double r) : r_(r) {}
  bool insert(cplx z) {
    long long bx = std::llround(std::floor(z.real() / r_)), by = std::llround(std::floor(z.imag() / r_));
    for (long long dx = -1; dx <= 1; ++dx)
      for (long long dy = -1; dy <= 1; ++dy) {
        auto it = cells_.find({bx + dx, by + dy});
        if (it == cells_.end()) continue;
        for (cplx q : it->second)
          if (std::abs(q - z) < r_) return false;
      }
    cells_[{bx, by}].push_back(z);
    return true;
  }

 private:
  double r_;
  std::map<std::pair<long long, long long>, std::vector<cplx>> cells_;
};

ZeroSetScan assemble(cplx beta, const std::vector<GoodWord>& words, double radius, int threads) {
  std::vector<WordRoots> per(words.size());
  parallel_for(words.size(), threads, [&](size_t i) { per[i] = roots_of(words[i], beta, radius); });
  ZeroSetScan s;
  s.beta = beta;
  s.cluster_radius = radius;
  s.words_scanned = words.size();
  Dedup d(radius);
  for (const WordRoots& wr : per) {
    s.max_residual = std::max(s.max_residual, wr.residual);
    for (const ZeroRoot& r : wr.roots)
      if (d.insert(r.gamma)) s.roots.push_back(r);
  }
  return s;
}

}  // namespace

ZeroSetScan scan_roots(cplx beta, const EnumSpec& spec, int threads, double cluster_radius) {
  std::vector<GoodWord> words;
  for (int m = 1; m <= spec.max_syllables; ++m) {
    for (GoodWord& w : enumerate_order2_words(m, spec.max_exp)) words.push_back(std::move(w));
    if (words.size() > spec.max_words)
      throw Error("scan_roots: corpus exceeds the word budget of " + std::to_string(spec.max_words));
  }
  ZeroSetScan s = assemble(beta, words, cluster_radius, threads);
  s.spec = spec;
  return s;
}

ZeroSetScan scan_words(cplx beta, const std::vector<std::string>& words, double cluster_radius) {
  std::vector<GoodWord> ws;
  for (const std::string& w : words) ws.push_back(parse_word(w, true));
  return assemble(beta, ws, cluster_radius, 1);
}

const char* cell_class_name(CellClass c) {
  switch (c) {
    case CellClass::Certificate:
      return "certificate";
    case CellClass::RootNear:
      return "root-near";
    case CellClass::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

cplx Raster::center(int col, int row) const {
  double dx = (window.re_max - window.re_min) / nx, dy = (window.im_max - window.im_min) / ny;
  return {window.re_min + (col + 0.5) * dx, window.im_max - (row + 0.5) * dy};
}

size_t Raster::count(CellClass c) const { return static_cast<size_t>(std::count(cells.begin(), cells.end(), c)); }

Raster classify_grid(cplx beta, const Window& w, int nx, int ny, const KillerOptions& killer,
                     const std::vector<ZeroRoot>& roots, double root_radius) {
  if (nx <= 0 || ny <= 0) throw PreconditionError("classify_grid: resolution must be positive");
  Raster r;
  r.beta = beta;
  r.window = w;
  r.nx = nx;
  r.ny = ny;
  r.cells.assign(static_cast<size_t>(nx) * ny, CellClass::Inconclusive);
  KillerSearch ks(beta, killer);
  parallel_for(r.cells.size(), killer.threads, [&](size_t i) {
    cplx g = r.center(static_cast<int>(i % nx), static_cast<int>(i / nx));
    if (ks.run(g)) {
      r.cells[i] = CellClass::Certificate;
      return;
    }
    for (const ZeroRoot& z : roots)
      if (std::abs(z.gamma - g) < root_radius) {
        r.cells[i] = CellClass::RootNear;
        return;
      }
  });
  return r;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw Error("cannot write " + path);
  f.precision(17);
  return f;
}

}  // namespace

void write_roots_csv(const ZeroSetScan& s, const std::string& path) {
  std::ofstream f = open_out(path);
  f << "re,im,word,multiplicity\n";
  for (const ZeroRoot& r : s.roots) f << r.gamma.real() << ',' << r.gamma.imag() << ',' << r.word << ',' << r.multiplicity << '\n';
  if (!f) throw Error("write failed: " + path);
}

std::vector<ZeroRoot> read_roots_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot read " + path);
  std::string line;
  if (!std::getline(f, line) || line != "re,im,word,multiplicity") throw ParseError("roots CSV: bad header");
  std::vector<ZeroRoot> out;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string re, im, word, mult;
    if (!std::getline(ss, re, ',') || !std::getline(ss, im, ',') || !std::getline(ss, word, ',') ||
        !std::getline(ss, mult))
      throw ParseError("roots CSV: malformed line '" + line + "'");
    try {
      out.push_back({{std::stod(re), std::stod(im)}, word, std::stoi(mult)});
    } catch (const std::exception&) {
      throw ParseError("roots CSV: malformed line '" + line + "'");
    }
  }
  return out;
}

nlohmann::json to_json(const ZeroSetScan& s) {
  nlohmann::json roots = nlohmann::json::array();
  for (const ZeroRoot& r : s.roots)
    roots.push_back({{"re", r.gamma.real()}, {"im", r.gamma.imag()}, {"word", r.word}, {"multiplicity", r.multiplicity}});
  return {{"beta", {s.beta.real(), s.beta.imag()}},
          {"spec", {{"max_syllables", s.spec.max_syllables}, {"max_exp", s.spec.max_exp}, {"max_words", s.spec.max_words}}},
          {"words_scanned", s.words_scanned},
          {"cluster_radius", s.cluster_radius},
          {"max_residual", s.max_residual},
          {"roots", roots}};
}

void write_raster_pgm(const Raster& r, const std::string& path) {
  std::ofstream f = open_out(path);
  f << "P2\n" << r.nx << ' ' << r.ny << "\n255\n";
  for (int row = 0; row < r.ny; ++row) {
    for (int col = 0; col < r.nx; ++col) {
      CellClass c = r.at(col, row);
      f << (col ? " " : "") << (c == CellClass::Certificate ? 0 : c == CellClass::RootNear ? 128 : 255);
    }
    f << '\n';
  }
  if (!f) throw Error("write failed: " + path);
}

void write_raster_csv(const Raster& r, const std::string& path) {
  std::ofstream f = open_out(path);
  for (int row = 0; row < r.ny; ++row) {
    for (int col = 0; col < r.nx; ++col) f << (col ? "," : "") << static_cast<int>(r.at(col, row));
    f << '\n';
  }
  if (!f) throw Error("write failed: " + path);
}

nlohmann::json raster_metadata(const Raster& r) {
  return {{"beta", {r.beta.real(), r.beta.imag()}},
          {"window", {{"re_min", r.window.re_min}, {"re_max", r.window.re_max}, {"im_min", r.window.im_min}, {"im_max", r.window.im_max}}},
          {"nx", r.nx},
          {"ny", r.ny},
          {"row0", "im_max"},
          {"codes", {{"0", "certificate"}, {"1", "root-near"}, {"2", "inconclusive"}}},
          {"counts",
           {{"certificate", r.count(CellClass::Certificate)},
            {"root-near", r.count(CellClass::RootNear)},
            {"inconclusive", r.count(CellClass::Inconclusive)}}}};
}

}  // namespace tracepoly
