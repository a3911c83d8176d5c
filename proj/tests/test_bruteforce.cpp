#include "doctest.h"

#include "dense_sweep.hpp"

using namespace oswr;
using oswr::test::compare_sweeps;

TEST_CASE("one sweep agrees with the dense space-time solve")
{
    for (const char* preset : {"heat1d", "varcoef1d"})
        for (auto orientation : {RobinOrientation::Forward, RobinOrientation::Outward}) {
            CAPTURE(preset);
            CHECK(compare_sweeps(preset, orientation, 1, 1.3) <= 1e-10);
        }
}

TEST_CASE("several sweeps agree with the dense iteration")
{
    CHECK(compare_sweeps("varcoef1d", RobinOrientation::Forward, 4, 1.3) <= 1e-10);
    CHECK(compare_sweeps("varcoef1d", RobinOrientation::Outward, 4, 1.3) <= 1e-10);
}
