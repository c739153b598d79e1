#pragma once

#include "segstd/errors.hpp"

namespace segstd {

// A basic segregation table: occupations collapsed to two gendered
// categories (rows), workers split by sex (columns). Cells hold weighted
// masses, not necessarily integers. Cell naming is <row><column> with
// f = female, m = male, so `mf` is men working in female categories.
//
// Invariants: every cell is >= 0 and the total mass is > 0. Marginals are
// always derived, never stored.
struct Table2x2 {
    double ff;  // women in female categories
    double mf;  // men in female categories
    double fm;  // women in male categories
    double mm;  // men in male categories

    Table2x2(double ff_, double mf_, double fm_, double mm_);

    double women() const { return ff + fm; }        // F
    double men() const { return mf + mm; }          // M
    double female_occ() const { return ff + mf; }   // N_f
    double male_occ() const { return fm + mm; }     // N_m
    double total() const { return ff + mf + fm + mm; }

    // Same table rescaled to total mass 1.
    Table2x2 normalized() const;

    // All cells multiplied by k (k > 0).
    Table2x2 scaled(double k) const;
};

// Row and column female shares of a table: N_f / N and F / N.
struct MarginalShares {
    double row_female_share;
    double col_female_share;
};

MarginalShares marginal_shares(const Table2x2& t);

// Cross-product ratio (ff*mm)/(mf*fm). Invariant to rescaling any row or
// column. With exactly one zero cell the value is still well defined:
// +infinity when an off-diagonal cell (mf or fm) is zero, 0 when a
// main-diagonal cell is. Two or more zero cells throw DegenerateTable.
double odds_ratio(const Table2x2& t);

// Index of dissimilarity on the 2x2: ff/F - mf/M. Equals mm/M - fm/F
// identically. Positive when women are overrepresented in female
// categories. Throws EmptySexGroup when F or M is zero.
double dissimilarity_2x2(const Table2x2& t);

// Phi coefficient (ff*mm - mf*fm) / sqrt(Nf*Nm*F*M). Equals Kendall's
// tau-b on the paired 0/1 data. Throws DegenerateMarginal when any
// marginal is zero.
double phi_coefficient(const Table2x2& t);

// Gini coefficient of the 2x2: |ff*mm - fm*mf| / (F*M). Throws
// EmptySexGroup when F or M is zero.
double gini_2x2(const Table2x2& t);

// True when ff ~ mm and mf ~ fm within tol * total mass (tol >= 0).
bool is_symmetric(const Table2x2& t, double tol = 0.0);

}  // namespace segstd
