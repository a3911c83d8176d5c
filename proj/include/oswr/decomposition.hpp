#pragma once

#include "oswr/grid.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace oswr {

/// Overlapping strips (a_l, b_l), l = 1..I, along the decomposed axis.
/// Vectors are 0-based; messages use 1-based subdomain numbers.
struct DecompositionSpec {
    double alpha = 0.0;
    double beta = 1.0;
    std::vector<double> a;
    std::vector<double> b;

    std::size_t subdomains() const noexcept { return a.size(); }

    /// I strips of equal core width (beta-alpha)/I, each interior interface
    /// pushed out by overlap/2 so neighbours share a band of width `overlap`.
    static DecompositionSpec uniform(double alpha, double beta, std::size_t count, double overlap);
};

/// Returns the first violated inequality of
///   alpha = a_1 < a_2 < b_1 < a_3 < b_2 < ... < a_I < b_{I-1} < b_I = beta
/// by name, or nullopt when the chain holds.
std::optional<std::string> validate(const DecompositionSpec& spec);

/// Throws ValidationError carrying the message from validate().
void require_valid(const DecompositionSpec& spec);

struct SubdomainEntry {
    std::size_t id = 0;            ///< 0-based
    AxisRange nodes;               ///< [node(a_l), node(b_l)]
    std::optional<std::size_t> left_neighbor;
    std::optional<std::size_t> right_neighbor;
};

struct SubdomainLayout {
    std::vector<SubdomainEntry> entries;
    std::vector<std::string> warnings;  ///< one per abscissa moved onto a node

    std::size_t size() const noexcept { return entries.size(); }
    const SubdomainEntry& operator[](std::size_t l) const { return entries[l]; }
};

/// Node nearest to `x`; exact midpoints go up when `round_up` is set.
std::size_t nearest_node(const SpaceTimeGrid& grid, double x, bool round_up);

/// Moves every abscissa to its nearest grid node. Ties between two nodes
/// resolve toward the larger overlap (a_l down, b_l up). Throws
/// ValidationError for an invalid spec and SnapFailure when snapping
/// collapses an overlap or makes non-adjacent strips touch.
SubdomainLayout snap(const DecompositionSpec& spec, const SpaceTimeGrid& grid);

} // namespace oswr
