#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "pouchsim/errors.hpp"
#include "pouchsim/peltier.hpp"
#include "pouchsim/thermal.hpp"

using Catch::Approx;
using namespace pouchsim;

namespace {

/// Time for node A to first reach target_k while drawing constant electrical
/// power, or +inf if it never does within t_max.
double rise_time_at_power(double power_w, double dt, double target_k, double t_max) {
    ThermalNetwork net;  // module defaults, both nodes at ambient
    const PeltierParams p;
    double t = 0.0;
    while (t < t_max) {
        const double current = current_for_power(p, power_w, net.node_a.temperature,
                                                 net.node_b.temperature);
        net = step_thermal(net, p, current, 0.0, 0.0, dt);
        t += dt;
        if (net.node_a.temperature >= target_k) return t;
    }
    return std::numeric_limits<double>::infinity();
}

}  // namespace

TEST_CASE("an isolated node integrates injected power exactly", "[thermal]") {
    ThermalNetwork net;
    net.node_a = ThermalNode{300.0, 10.0, 0.0};
    net.node_b = ThermalNode{300.0, 10.0, 0.0};
    net.ambient = 300.0;
    PeltierParams p;
    p.couple_count = 1;
    p.thermal_conductance = 0.0;  // decouple the nodes

    // a negative latent sink is a 5 W source: dT = 5 * 1 / 10 = 0.5 K
    const auto next = step_thermal(net, p, 0.0, -5.0, 0.0, 1.0);
    CHECK(next.node_a.temperature == Approx(300.5).epsilon(1e-15));
    CHECK(next.node_b.temperature == 300.0);
}

TEST_CASE("ambient equilibrium is a fixed point", "[thermal]") {
    const ThermalNetwork net;  // both nodes at ambient
    const PeltierParams p;
    const auto next = step_thermal(net, p, 0.0, 0.0, 0.0, 0.5);
    CHECK(next.node_a.temperature == net.node_a.temperature);
    CHECK(next.node_b.temperature == net.node_b.temperature);
}

TEST_CASE("free convective decay follows the discrete exponential", "[thermal]") {
    ThermalNetwork net;
    net.node_a = ThermalNode{318.15, 10.0, 0.1};
    net.node_b = ThermalNode{308.15, 10.0, 0.1};
    net.ambient = 308.15;
    PeltierParams p;
    p.thermal_conductance = 0.0;  // pure RC decay on node A

    const double dt = 0.01;
    ThermalNetwork state = net;
    for (int i = 0; i < 100; ++i) {
        state = step_thermal(state, p, 0.0, 0.0, 0.0, dt);
    }
    const double decay = std::pow(1.0 - 0.1 * dt / 10.0, 100);
    CHECK(state.node_a.temperature == Approx(308.15 + 10.0 * decay).epsilon(1e-12));
    // and the discrete solution tracks the continuous one at this resolution
    CHECK(state.node_a.temperature ==
          Approx(308.15 + 10.0 * std::exp(-0.01)).epsilon(1e-4));
    CHECK(state.node_b.temperature == 308.15);
}

TEST_CASE("step rejects unstable or malformed steps", "[thermal]") {
    const ThermalNetwork net;
    const PeltierParams p;
    // defaults: 2 * 12 / (0.1 + 2 * 127 * 0.001) = 67.8 s stability bound
    CHECK(max_stable_dt(net, p) == Approx(2.0 * 12.0 / 0.354).epsilon(1e-12));
    CHECK_NOTHROW(step_thermal(net, p, 0.0, 0.0, 0.0, 60.0));
    CHECK_THROWS_AS(step_thermal(net, p, 0.0, 0.0, 0.0, 68.0), std::invalid_argument);
    CHECK_THROWS_AS(step_thermal(net, p, 0.0, 0.0, 0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(step_thermal(net, p, 0.0, 0.0, 0.0, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(step_thermal(net, p, 0.0, 0.0, 0.0, std::nan("")),
                    std::invalid_argument);
    CHECK_THROWS_AS(step_thermal(net, p, 0.0, std::nan(""), 0.0, 1.0),
                    std::invalid_argument);
}

TEST_CASE("energy bookkeeping balances over a driven run", "[thermal]") {
    ThermalNetwork net;  // defaults
    const PeltierParams p;
    const double dt = 0.01;
    const double t_init_a = net.node_a.temperature;
    const double t_init_b = net.node_b.temperature;

    double e_net = 0.0;
    for (int i = 0; i < 2000; ++i) {
        const auto flows =
            junction_heat_flows(p, 1.2, net.node_a.temperature, net.node_b.temperature);
        e_net += dt * (flows.q_hot -
                       net.node_a.convection * (net.node_a.temperature - net.ambient));
        e_net += dt * (-flows.q_cold -
                       net.node_b.convection * (net.node_b.temperature - net.ambient));
        net = step_thermal(net, p, 1.2, 0.0, 0.0, dt);
    }
    const double de = net.node_a.heat_capacity * (net.node_a.temperature - t_init_a) +
                      net.node_b.heat_capacity * (net.node_b.temperature - t_init_b);
    CHECK(std::fabs(de - e_net) <= 1e-9 * (std::fabs(de) + 1.0));
}

TEST_CASE("unpowered network relaxes to ambient", "[thermal]") {
    ThermalNetwork net;
    net.node_a.temperature = 330.0;
    net.node_b.temperature = 295.0;
    const PeltierParams p;
    const double dt = 0.05;
    for (int i = 0; i < 30000; ++i) {  // 1500 s, several symmetric-mode time constants
        net = step_thermal(net, p, 0.0, 0.0, 0.0, dt);
    }
    CHECK(net.node_a.temperature == Approx(net.ambient).margin(1e-3));
    CHECK(net.node_b.temperature == Approx(net.ambient).margin(1e-3));
}

TEST_CASE("steady-state temperature closed form", "[thermal]") {
    const ThermalNode node{308.15, 12.0, 0.1};
    CHECK(steady_state_temperature(node, 3.5, 308.15) == Approx(343.15).epsilon(1e-12));
    CHECK(steady_state_temperature(node, 0.0, 308.15) == 308.15);

    const ThermalNode isolated{308.15, 12.0, 0.0};
    CHECK(steady_state_temperature(isolated, 0.0, 308.15) == 308.15);
    CHECK_THROWS_AS(steady_state_temperature(isolated, 1.0, 308.15), infeasible_error);
    CHECK_THROWS_AS(steady_state_temperature(node, std::nan(""), 308.15),
                    std::invalid_argument);
}

TEST_CASE("hotter drive power reaches the target sooner", "[thermal]") {
    const double target = 343.15;  // 35 K above ambient
    const double dt = 0.01;
    const double slow = rise_time_at_power(2.5, dt, target, 1000.0);
    const double mid = rise_time_at_power(5.0, dt, target, 1000.0);
    const double fast = rise_time_at_power(7.0, dt, target, 1000.0);
    REQUIRE(std::isfinite(slow));
    REQUIRE(std::isfinite(mid));
    REQUIRE(std::isfinite(fast));
    CHECK(slow > mid);
    CHECK(mid > fast);
}

TEST_CASE("active reverse-current cooling beats passive decay", "[thermal]") {
    ThermalNetwork net;  // defaults
    const PeltierParams p;
    const double dt = 0.01;

    // heat node A to 70 degC at 7 W
    double t = 0.0;
    while (net.node_a.temperature < 343.15 && t < 500.0) {
        const double current = current_for_power(p, 7.0, net.node_a.temperature,
                                                 net.node_b.temperature);
        net = step_thermal(net, p, current, 0.0, 0.0, dt);
        t += dt;
    }
    REQUIRE(net.node_a.temperature >= 343.15);

    const auto cool_time = [&](double current) {
        ThermalNetwork state = net;
        double elapsed = 0.0;
        while (state.node_a.temperature > 309.15 && elapsed < 2000.0) {
            state = step_thermal(state, p, current, 0.0, 0.0, dt);
            elapsed += dt;
        }
        return elapsed;
    };
    const double passive = cool_time(0.0);
    const double active = cool_time(-1.0);
    REQUIRE(passive < 2000.0);
    REQUIRE(active < 2000.0);
    CHECK(active < passive);
}

TEST_CASE("thermal validation rejects broken parameter sets", "[thermal]") {
    ThermalNetwork net;
    CHECK_NOTHROW(net.validate());

    ThermalNetwork bad = net;
    bad.node_a.heat_capacity = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    bad = net;
    bad.node_b.convection = -0.1;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    bad = net;
    bad.ambient = -1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    bad = net;
    bad.node_a.temperature = std::nan("");
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
