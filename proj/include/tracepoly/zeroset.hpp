#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "tracepoly/discreteness.hpp"
#include "tracepoly/gaussrat.hpp"

namespace tracepoly {

struct EnumSpec {
  int max_syllables = 5;
  int max_exp = 4;
  size_t max_words = 10000;
};

struct ZeroRoot {
  cplx gamma;
  std::string word;
  int multiplicity = 1;
};

struct ZeroSetScan {
  cplx beta;
  EnumSpec spec;
  size_t words_scanned = 0;
  double cluster_radius = 1e-6;
  double max_residual = 0;  // max |p_w(beta, root)|
  std::vector<ZeroRoot> roots;
};

// Roots in gamma of p_w(beta, .) for every order2-mode word in the corpus,
// deduplicated across words (the first word in corpus order is kept).
ZeroSetScan scan_roots(cplx beta, const EnumSpec& spec = {}, int threads = 0, double cluster_radius = 1e-6);
// Same, for an explicit word list.
ZeroSetScan scan_words(cplx beta, const std::vector<std::string>& words, double cluster_radius = 1e-6);

struct Window {
  double re_min = -2, re_max = 2, im_min = -2, im_max = 2;
};

enum class CellClass : unsigned char { Certificate = 0, RootNear = 1, Inconclusive = 2 };
const char* cell_class_name(CellClass c);

struct Raster {
  cplx beta;
  Window window;
  int nx = 0, ny = 0;             // columns (real axis), rows (imaginary axis)
  std::vector<CellClass> cells;   // row-major, row 0 at im_max
  cplx center(int col, int row) const;
  CellClass at(int col, int row) const { return cells[static_cast<size_t>(row) * nx + col]; }
  size_t count(CellClass c) const;
};

// Per cell centre: certificate if the killer search succeeds, else root-near
// if within root_radius of a scanned root, else inconclusive.
Raster classify_grid(cplx beta, const Window& w, int nx, int ny, const KillerOptions& killer,
                     const std::vector<ZeroRoot>& roots = {}, double root_radius = 1e-6);

void write_roots_csv(const ZeroSetScan& s, const std::string& path);
std::vector<ZeroRoot> read_roots_csv(const std::string& path);
nlohmann::json to_json(const ZeroSetScan& s);
void write_raster_pgm(const Raster& r, const std::string& path);
void write_raster_csv(const Raster& r, const std::string& path);
nlohmann::json raster_metadata(const Raster& r);

}  // namespace tracepoly
