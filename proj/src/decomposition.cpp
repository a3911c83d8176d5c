#include "oswr/decomposition.hpp"

#include "oswr/error.hpp"

#include <cmath>
#include <sstream>

namespace oswr {

DecompositionSpec DecompositionSpec::uniform(double alpha, double beta, std::size_t count, double overlap)
{
    if (count < 2)
        throw Error(ErrorCode::ValidationError, "subdomains must be at least 2");
    if (!(overlap > 0.0))
        throw Error(ErrorCode::ValidationError, "overlap must be positive");
    if (!(alpha < beta))
        throw Error(ErrorCode::ValidationError, "domain requires alpha < beta");

    const double width = (beta - alpha) / static_cast<double>(count);
    DecompositionSpec spec;
    spec.alpha = alpha;
    spec.beta = beta;
    for (std::size_t l = 0; l < count; ++l) {
        spec.a.push_back(l == 0 ? alpha : alpha + static_cast<double>(l) * width - 0.5 * overlap);
        spec.b.push_back(l + 1 == count ? beta
                                        : alpha + static_cast<double>(l + 1) * width + 0.5 * overlap);
    }
    if (auto violation = validate(spec))
        throw Error(ErrorCode::ValidationError,
                    "overlap " + std::to_string(overlap) + " too wide for " + std::to_string(count) +
                        " strips: " + *violation);
    return spec;
}

std::optional<std::string> validate(const DecompositionSpec& spec)
{
    const std::size_t count = spec.a.size();
    if (count < 2)
        return std::string("at least 2 subdomains required");
    if (spec.b.size() != count)
        return std::string("lists a and b must have the same length");

    auto name_a = [](std::size_t l) { return "a_" + std::to_string(l + 1); };
    auto name_b = [](std::size_t l) { return "b_" + std::to_string(l + 1); };

    if (spec.a.front() != spec.alpha)
        return "a_1 = alpha fails";
    if (spec.b.back() != spec.beta)
        return "b_" + std::to_string(count) + " = beta fails";

    // chain: a_1 < a_2 < b_1 < a_3 < b_2 < ... < a_I < b_{I-1} < b_I
    std::vector<std::pair<double, std::string>> chain;
    chain.emplace_back(spec.a[0], name_a(0));
    for (std::size_t l = 1; l < count; ++l) {
        chain.emplace_back(spec.a[l], name_a(l));
        chain.emplace_back(spec.b[l - 1], name_b(l - 1));
    }
    chain.emplace_back(spec.b[count - 1], name_b(count - 1));
    for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
        if (!(chain[k].first < chain[k + 1].first))
            return chain[k].second + " < " + chain[k + 1].second + " fails";
    }
    return std::nullopt;
}

void require_valid(const DecompositionSpec& spec)
{
    if (auto violation = validate(spec))
        throw Error(ErrorCode::ValidationError, "decomposition: " + *violation);
}

std::size_t nearest_node(const SpaceTimeGrid& grid, double x, bool round_up)
{
    const double pos = (x - grid.domain.alpha) / grid.hx_axis;
    const double below = std::floor(pos);
    const double frac = pos - below;
    constexpr double tie_tol = 1e-9;
    double node = 0.0;
    if (std::abs(frac - 0.5) <= tie_tol)
        node = round_up ? below + 1.0 : below;
    else
        node = frac < 0.5 ? below : below + 1.0;
    if (node < 0.0)
        node = 0.0;
    const auto last = static_cast<double>(grid.nx_axis - 1);
    if (node > last)
        node = last;
    return static_cast<std::size_t>(node);
}

SubdomainLayout snap(const DecompositionSpec& spec, const SpaceTimeGrid& grid)
{
    require_valid(spec);
    if (spec.alpha != grid.domain.alpha || spec.beta != grid.domain.beta)
        throw Error(ErrorCode::ValidationError, "decomposition bounds differ from the grid axis");

    const std::size_t count = spec.subdomains();
    SubdomainLayout layout;
    std::vector<std::size_t> ia(count);
    std::vector<std::size_t> ib(count);
    auto record = [&](const char* name, std::size_t l, double x, std::size_t node) {
        const double shift = grid.axis(node) - x;
        if (std::abs(shift) > 1e-12 * std::max(1.0, std::abs(x))) {
            std::ostringstream os;
            os << name << '_' << (l + 1) << '=' << x << " moved to node " << node << " (x="
               << grid.axis(node) << ", shift " << shift << ')';
            layout.warnings.push_back(os.str());
        }
    };
    for (std::size_t l = 0; l < count; ++l) {
        ia[l] = l == 0 ? 0 : nearest_node(grid, spec.a[l], false);
        ib[l] = l + 1 == count ? grid.nx_axis - 1 : nearest_node(grid, spec.b[l], true);
        record("a", l, spec.a[l], ia[l]);
        record("b", l, spec.b[l], ib[l]);
    }

    for (std::size_t l = 0; l + 1 < count; ++l) {
        if (ia[l + 1] >= ib[l])
            throw Error(ErrorCode::SnapFailure, "overlap between subdomains " + std::to_string(l + 1) +
                                                    " and " + std::to_string(l + 2) +
                                                    " collapses to zero cells on this grid");
        if (ia[l + 1] <= ia[l])
            throw Error(ErrorCode::SnapFailure, "a_" + std::to_string(l + 2) + " and a_" +
                                                    std::to_string(l + 1) + " snap to the same node");
        if (ib[l + 1] <= ib[l])
            throw Error(ErrorCode::SnapFailure, "b_" + std::to_string(l + 2) + " and b_" +
                                                    std::to_string(l + 1) + " snap to the same node");
        if (l + 2 < count && ia[l + 2] <= ib[l])
            throw Error(ErrorCode::SnapFailure, "a_" + std::to_string(l + 3) + " > b_" +
                                                    std::to_string(l + 1) + " fails after snapping");
    }

    for (std::size_t l = 0; l < count; ++l) {
        SubdomainEntry entry;
        entry.id = l;
        entry.nodes = {ia[l], ib[l]};
        if (l > 0)
            entry.left_neighbor = l - 1;
        if (l + 1 < count)
            entry.right_neighbor = l + 1;
        layout.entries.push_back(entry);
    }
    return layout;
}

} // namespace oswr
