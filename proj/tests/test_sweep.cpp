#include "pseudopara/sweep.hpp"

#include <doctest/doctest.h>

#include <stdexcept>

#include <algorithm>
#include <sstream>

using namespace pseudopara;

namespace {

SweepConfig small() {
    SweepConfig c;
    c.r_max = 20.0;
    c.n_r = 101;
    c.p = {6.0, 2.0, 3.0};
    c.gamma = {0.5, 0.0};
    c.control.dt0 = 0.05;
    c.control.horizon = 5.0;
    c.control.growth_floor = 1e-3;
    return c;
}

}  // namespace

TEST_CASE("sweep results are sorted and independent of the worker count") {
    const auto cfg = small();
    const auto one = run_sweep(cfg, 1);
    const auto many = run_sweep(cfg, 4);
    REQUIRE(one.size() == 6);
    REQUIRE(many.size() == 6);
    for (std::size_t i = 0; i < one.size(); ++i) {
        CHECK(one[i].params == many[i].params);
        CHECK(one[i].outcome == many[i].outcome);
        CHECK(one[i].steps == many[i].steps);
        CHECK(one[i].final_sup_norm == many[i].final_sup_norm);
        CHECK(one[i].error.empty());
        if (i > 0) {
            CHECK(one[i - 1].params < one[i].params);
        }
    }
    CHECK(one.front().params.p == 2.0);
    CHECK(one.front().params.gamma == 0.0);
}

TEST_CASE("near-critical flag") {
    auto cfg = small();
    cfg.p = {3.05, 4.0};
    cfg.gamma = {0.0};
    const auto r = run_sweep(cfg, 2);
    CHECK(r[0].flagged_near_critical);
    CHECK_FALSE(r[1].flagged_near_critical);
    if (r[0].raw_outcome == Outcome::Bounded && r[0].monotone_growth) {
        CHECK(r[0].outcome == Outcome::Undecided);
    }
}

TEST_CASE("sweep validation") {
    auto cfg = small();
    cfg.omega_amp = {-0.1};
    CHECK_THROWS(cfg.validate());
    cfg = small();
    cfg.p = {};
    CHECK_THROWS(cfg.validate());
    cfg = small();
    cfg.gamma = {1.0};
    CHECK_THROWS(cfg.validate());
    CHECK_NOTHROW(small().validate());
}

TEST_CASE("map outputs") {
    auto cfg = small();
    cfg.control.horizon = 0.5;
    const auto r = run_sweep(cfg, 0);
    std::ostringstream os;
    write_map_csv(os, r);
    const auto text = os.str();
    CHECK(text.rfind("N,k,p,gamma,omega_amp,outcome,t_star,steps,flagged_near_critical,wall_ms\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 7);

    const auto map = classify_map(r);
    CHECK(map.p_critical == 3.0);
    CHECK(map.p_values == std::vector<double>{2.0, 3.0, 6.0});
    CHECK(map.gamma_values == std::vector<double>{0.0, 0.5});
    const auto table = map.render();
    const auto marker = table.find("p_c = 3");
    REQUIRE(marker != std::string::npos);
    CHECK(table.find("\n2 ") < marker);
    CHECK(table.find("\n3") > marker);
    CHECK_THROWS(classify_map({}));
}
