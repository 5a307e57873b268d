#pragma once

#include <string>
#include <vector>

#include "kth/geom/kt.hpp"
#include "kth/oracle/fd_kernel.hpp"

namespace kth {

struct OracleSectorReport {
  HeisenbergSector sector;
  bool criterion_solvable = false;  // exact criterion, for comparison only
  int oracle_dim = 0;
  double sigma_min = 0;
  double sigma_gap = 0;
  bool agree = true;
};

struct OracleH01Result {
  long long count = 0;
  long long zero_sector_count = 0;
  long long heisenberg_count = 0;
  std::vector<OracleSectorReport> sectors;
  std::vector<std::string> warnings;  // truncation and conditioning notes
};

struct OracleOptions {
  long long nmax = 3;
  long long lmbound = 0;  // <= 0: 2|d| + 1, enough to contain the whole circle
  long long kmax = 1;
  double tol = 1e-6;
};

/// Independent h^{0,1}: exhaustive n = 0 scan by integer determinants in
/// powers of pi (does not use the lattice module), plus FD kernel counts
/// for 0 < |n| <= min(nmax, n_bound(d)). Sectors run concurrently.
OracleH01Result oracle_h01(const AcsParams& p, const MetricSpec& metric, const OracleOptions& opt = {});
OracleH01Result oracle_h01_serial(const AcsParams& p, const MetricSpec& metric, const OracleOptions& opt = {});

/// Number of (k, l, m) with |k|, |l|, |m| <= bound whose n = 0 system is singular.
long long zero_sector_scan(const AcsParams& p, const MetricSpec& metric, long long bound, bool parallel = true);

}  // namespace kth
