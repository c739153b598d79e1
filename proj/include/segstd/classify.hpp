#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "segstd/table.hpp"

namespace segstd {

// One occupation category with its weighted female and male masses.
struct OccupationRow {
    std::string category_id;
    double f = 0;
    double m = 0;

    double total() const { return f + m; }
    double female_share() const { return f / total(); }
};

// An occupation-by-sex table for one population. Construction validates
// that category ids are unique and masses non-negative, drops zero-mass
// categories (keeping a count of how many), and requires at least one
// surviving row.
class OccupationTable {
public:
    explicit OccupationTable(std::vector<OccupationRow> rows);

    const std::vector<OccupationRow>& rows() const { return rows_; }
    std::size_t dropped_rows() const { return dropped_; }

    double total_f() const { return total_f_; }
    double total_m() const { return total_m_; }
    double total() const { return total_f_ + total_m_; }

private:
    std::vector<OccupationRow> rows_;
    std::size_t dropped_ = 0;
    double total_f_ = 0;
    double total_m_ = 0;
};

enum class GenderLabel { Female, Male };

// A labelling of every category plus the basic table it induces. The basic
// cells are the label-wise sums of the occupation table, so mass is
// conserved. `degenerate` flags the case where one gendered row ended up
// all-zero (every category fell on one side of the cutoff).
struct Classification {
    std::map<std::string, GenderLabel> labels;
    Table2x2 basic;
    bool degenerate = false;
};

// Marginal-matching diagnostics: how close the female-category workforce
// share got to the female workforce share, and where the greedy fill
// stopped.
struct MMDiagnostics {
    double nf_target = 0;       // F, the female workforce mass
    double nf_achieved = 0;     // workforce mass of the categories labelled Female
    double mismatch = 0;        // nf_target - nf_achieved (always >= 0)
    double mismatch_share = 0;  // mismatch / total workforce
    std::optional<std::string> boundary_category;  // first category left out
};

// Label a category Female when its female share strictly exceeds the
// workforce female share (F_i/N_i > F/N, compared exactly by
// cross-multiplication); ties go to Male. Throws EmptySexGroup when either
// sex has zero total mass.
Classification basic_classification(const OccupationTable& t);

// Marginal-matching classification: sort categories by female share
// (descending; ties broken by larger F_i, then by category id) and absorb
// them into the Female side while the cumulative workforce mass stays
// <= F, stopping at the first category that would overshoot. Throws
// EmptySexGroup when either sex has zero total mass.
std::pair<Classification, MMDiagnostics> mm_classification(const OccupationTable& t);

}  // namespace segstd
