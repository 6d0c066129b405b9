#pragma once

#include <string>
#include <vector>

#include "krforge/engine.hpp"

namespace krforge {

struct PageTable {
  int page = 1;
  Table cells;
  bool operator==(const PageTable& o) const { return cells == o.cells; }
};

// A nonzero differential on page `page` from bidegree `from` to `to`, recorded as one rank.
struct Arrow {
  int page;
  std::pair<int, int> from, to;
};

struct SpectralReport {
  std::vector<PageTable> pages;  // E_1, E_2, ... up to the first page with zero differential
  PageTable einf;
  std::vector<int> significant;
  std::vector<int> drops;        // quantum drops of all cancelled pairs, ascending, distinct
  std::vector<Arrow> arrows;     // pairs cancelled on pages >= 1
};

// Successive elimination: the drop-2i part is cancelled between E_i and E_{i+1}.
// Throws OddDrop on an odd quantum drop and Inconsistent on a filtration violation.
SpectralReport compute_pages(ScalarComplex c);

std::vector<int> significant_pages(const SpectralReport& r);

// Laurent polynomial in t and q, terms ordered by t then q, e.g. "q^-2 + 1 + q^2", "0" if empty.
std::string poincare(const Table& t);

// {"page": i, "cells": [[t, q, dim], ...]}
std::string to_json(const PageTable& p);

}  // namespace krforge
