#ifndef RSCLUST_MCF_HPP
#define RSCLUST_MCF_HPP

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "rsclust/types.hpp"

namespace rsclust {

// Minimum-cost flow with per-arc lower and upper bounds.
//
// The clustering instance built by build_network has node set
// {s} u X u C u {t} and three arc layers:
//   E1  s -> point i       bounds [0, 1], cost 0
//   E2  point i -> center j  bounds [0, 1], cost ||x_i - c_j||^2
//   E3  center j -> t       bounds [l, u], cost 0
// with demands d(s) = n, d(t) = -n and d(v) = 0 elsewhere, where the demand
// convention is total outflow minus total inflow. An integral optimal flow
// of quantity n is then exactly a cost-minimal assignment of points to
// centers with every center's load inside [l, u].

struct Arc {
    std::int32_t from = 0;
    std::int32_t to = 0;
    std::int64_t lower = 0;
    std::int64_t upper = 0;
    double cost = 0.0;
};

struct FlowNetwork {
    std::int32_t num_nodes = 0;
    std::vector<Arc> arcs;
    std::vector<std::int64_t> demand;  // per node, outflow minus inflow

    // layout bookkeeping filled in by build_network (-1 for hand-built nets)
    std::int32_t source = -1;
    std::int32_t sink = -1;
    std::int64_t n_points = 0;
    std::int64_t k_centers = 0;

    std::int32_t point_node(std::int64_t i) const { return static_cast<std::int32_t>(1 + i); }
    std::int32_t center_node(std::int64_t j) const {
        return static_cast<std::int32_t>(1 + n_points + j);
    }
    // arc index of point i -> center j
    std::size_t e2_arc(std::int64_t i, std::int64_t j) const {
        return static_cast<std::size_t>(n_points + i * k_centers + j);
    }
};

struct Flow {
    std::vector<std::int64_t> arc_flow;  // aligned with FlowNetwork::arcs
    double total_cost = 0.0;
};

// per-point center index
using Assignment = std::vector<std::int32_t>;

FlowNetwork build_network(const Dataset& X, const CentroidSet& C, BalanceBounds b);

// Refresh the E2 costs of a built network for a new centroid set.
void set_assignment_costs(FlowNetwork& net, const Dataset& X, const CentroidSet& C);

// Successive shortest augmenting paths with node potentials. Lower bounds are
// handled by the usual transformation: pre-route lower(e) on every arc,
// shift the node imbalances accordingly, and solve the residual problem on
// capacities upper(e) - lower(e). All capacities and demands are integral, so
// the returned flow is integral. Throws InfeasibleFlowError when the demands
// cannot be met, naming the violated cut.
Flow solve_min_cost_flow(const FlowNetwork& net);

// sigma(i) = the unique center j whose E2 arc carries one unit.
Assignment flow_to_assignment(const FlowNetwork& net, const Flow& flow);

// Optimality audit: true if the residual graph contains a cycle of negative
// total cost (Bellman-Ford). A correct optimal flow has none.
bool residual_has_negative_cycle(const FlowNetwork& net, const Flow& flow);

// Text edge list, one arc per line: origin dest lower upper cost
void dump_network(const FlowNetwork& net, std::ostream& out);

}  // namespace rsclust

#endif  // RSCLUST_MCF_HPP
