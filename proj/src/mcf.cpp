#include "rsclust/mcf.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>
#include <queue>
#include <string>

#include "rsclust/geometry.hpp"

namespace rsclust {

FlowNetwork build_network(const Dataset& X, const CentroidSet& C, BalanceBounds b) {
    if (X.dim() != C.dim()) throw DimensionError("dataset/center dimension mismatch");
    if (b.lower < 0 || b.upper < 1 || b.lower > b.upper) {
        throw InvalidParameterError("balance bounds need 0 <= l <= u, u >= 1");
    }
    const std::int64_t n = static_cast<std::int64_t>(X.size());
    const std::int64_t k = static_cast<std::int64_t>(C.k());
    if (k * b.lower > n || n > k * b.upper) {
        throw InfeasibleBoundsError(
            "infeasible balance bounds: need k*l <= n <= k*u, got k=" +
            std::to_string(k) + ", l=" + std::to_string(b.lower) +
            ", u=" + std::to_string(b.upper) + ", n=" + std::to_string(n));
    }

    FlowNetwork net;
    net.n_points = n;
    net.k_centers = k;
    net.source = 0;
    net.sink = static_cast<std::int32_t>(1 + n + k);
    net.num_nodes = static_cast<std::int32_t>(n + k + 2);
    net.demand.assign(static_cast<std::size_t>(net.num_nodes), 0);
    net.demand[0] = n;
    net.demand[static_cast<std::size_t>(net.sink)] = -n;

    net.arcs.reserve(static_cast<std::size_t>(n + n * k + k));
    for (std::int64_t i = 0; i < n; ++i) {
        net.arcs.push_back(Arc{net.source, net.point_node(i), 0, 1, 0.0});
    }
    for (std::int64_t i = 0; i < n; ++i) {
        for (std::int64_t j = 0; j < k; ++j) {
            net.arcs.push_back(Arc{net.point_node(i), net.center_node(j), 0, 1, 0.0});
        }
    }
    for (std::int64_t j = 0; j < k; ++j) {
        net.arcs.push_back(Arc{net.center_node(j), net.sink, b.lower, b.upper, 0.0});
    }
    set_assignment_costs(net, X, C);
    return net;
}

void set_assignment_costs(FlowNetwork& net, const Dataset& X, const CentroidSet& C) {
    const std::int64_t n = net.n_points;
    const std::int64_t k = net.k_centers;
    for (std::int64_t i = 0; i < n; ++i) {
        for (std::int64_t j = 0; j < k; ++j) {
            net.arcs[net.e2_arc(i, j)].cost = squared_distance(
                X.row(static_cast<std::size_t>(i)), C.center(static_cast<std::size_t>(j)));
        }
    }
}

namespace {

constexpr double kRelaxTol = 1e-12;

struct Residual {
    // paired arcs: 2a forward (capacity, cost c), 2a+1 backward (0, -c)
    std::vector<std::int32_t> head;
    std::vector<std::int64_t> cap;
    std::vector<double> cost;
    std::vector<std::vector<std::int32_t>> adj;

    void add(std::int32_t from, std::int32_t to, std::int64_t capacity, double c) {
        adj[static_cast<std::size_t>(from)].push_back(static_cast<std::int32_t>(head.size()));
        head.push_back(to);
        cap.push_back(capacity);
        cost.push_back(c);
        adj[static_cast<std::size_t>(to)].push_back(static_cast<std::int32_t>(head.size()));
        head.push_back(from);
        cap.push_back(0);
        cost.push_back(-c);
    }
};

}  // namespace

Flow solve_min_cost_flow(const FlowNetwork& net) {
    const std::size_t V = static_cast<std::size_t>(net.num_nodes);
    if (net.demand.size() != V) throw InvalidParameterError("demand vector size mismatch");
    std::int64_t demand_sum = 0;
    for (std::int64_t d : net.demand) demand_sum += d;
    if (demand_sum != 0) throw InvalidParameterError("node demands must sum to zero");
    for (const Arc& a : net.arcs) {
        if (a.lower < 0 || a.lower > a.upper) {
            throw InvalidParameterError("arc bounds need 0 <= lower <= upper");
        }
        if (!std::isfinite(a.cost) || a.cost < 0.0) {
            throw InvalidParameterError("arc costs must be finite and nonnegative");
        }
    }

    // lower-bound transformation: pre-route lower(e), solve on the residual
    // capacities; excess[v] tracks how much v still has to push
    std::vector<std::int64_t> excess(net.demand.begin(), net.demand.end());
    Residual g;
    g.adj.resize(V);
    for (const Arc& a : net.arcs) {
        excess[static_cast<std::size_t>(a.from)] -= a.lower;
        excess[static_cast<std::size_t>(a.to)] += a.lower;
        g.add(a.from, a.to, a.upper - a.lower, a.cost);
    }

    std::vector<double> potential(V, 0.0);
    std::vector<double> dist(V);
    std::vector<std::int32_t> parent_arc(V);
    const double inf = std::numeric_limits<double>::infinity();

    for (;;) {
        // lowest-index node that still has surplus
        std::int32_t src = -1;
        for (std::size_t v = 0; v < V; ++v) {
            if (excess[v] > 0) {
                src = static_cast<std::int32_t>(v);
                break;
            }
        }
        if (src < 0) break;

        // Dijkstra over reduced costs from src
        std::fill(dist.begin(), dist.end(), inf);
        std::fill(parent_arc.begin(), parent_arc.end(), -1);
        dist[static_cast<std::size_t>(src)] = 0.0;
        using Item = std::pair<double, std::int32_t>;
        std::priority_queue<Item, std::vector<Item>, std::greater<Item>> queue;
        queue.push({0.0, src});
        std::vector<char> settled(V, 0);
        while (!queue.empty()) {
            const auto [du, u] = queue.top();
            queue.pop();
            if (settled[static_cast<std::size_t>(u)]) continue;
            settled[static_cast<std::size_t>(u)] = 1;
            for (std::int32_t e : g.adj[static_cast<std::size_t>(u)]) {
                if (g.cap[static_cast<std::size_t>(e)] <= 0) continue;
                const std::int32_t v = g.head[static_cast<std::size_t>(e)];
                const double reduced = g.cost[static_cast<std::size_t>(e)] +
                                       potential[static_cast<std::size_t>(u)] -
                                       potential[static_cast<std::size_t>(v)];
                const double nd = du + std::max(0.0, reduced);
                if (nd < dist[static_cast<std::size_t>(v)] - kRelaxTol) {
                    dist[static_cast<std::size_t>(v)] = nd;
                    parent_arc[static_cast<std::size_t>(v)] = e;
                    queue.push({nd, v});
                }
            }
        }

        // nearest reachable deficit node, ties to the lowest node index
        std::int32_t dst = -1;
        for (std::size_t v = 0; v < V; ++v) {
            if (excess[v] < 0 && dist[v] < inf) {
                if (dst < 0 || dist[v] < dist[static_cast<std::size_t>(dst)] - kRelaxTol) {
                    dst = static_cast<std::int32_t>(v);
                }
            }
        }
        if (dst < 0) {
            std::int64_t stranded = 0;
            std::size_t reachable = 0;
            for (std::size_t v = 0; v < V; ++v) {
                if (dist[v] < inf) {
                    ++reachable;
                    if (excess[v] > 0) stranded += excess[v];
                }
            }
            throw InfeasibleFlowError(
                "infeasible flow: " + std::to_string(stranded) +
                " unit(s) of supply stranded in a cut of " + std::to_string(reachable) +
                " node(s) with no residual arc out");
        }

        // augment along the shortest path by the bottleneck amount
        std::int64_t amount =
            std::min(excess[static_cast<std::size_t>(src)],
                     -excess[static_cast<std::size_t>(dst)]);
        for (std::int32_t v = dst; v != src;) {
            const std::int32_t e = parent_arc[static_cast<std::size_t>(v)];
            amount = std::min(amount, g.cap[static_cast<std::size_t>(e)]);
            v = g.head[static_cast<std::size_t>(e ^ 1)];
        }
        for (std::int32_t v = dst; v != src;) {
            const std::int32_t e = parent_arc[static_cast<std::size_t>(v)];
            g.cap[static_cast<std::size_t>(e)] -= amount;
            g.cap[static_cast<std::size_t>(e ^ 1)] += amount;
            v = g.head[static_cast<std::size_t>(e ^ 1)];
        }
        excess[static_cast<std::size_t>(src)] -= amount;
        excess[static_cast<std::size_t>(dst)] += amount;

        const double horizon = dist[static_cast<std::size_t>(dst)];
        for (std::size_t v = 0; v < V; ++v) {
            potential[v] += std::min(dist[v], horizon);
        }
    }

    Flow flow;
    flow.arc_flow.resize(net.arcs.size());
    double total = 0.0;
    for (std::size_t a = 0; a < net.arcs.size(); ++a) {
        const std::int64_t routed = g.cap[2 * a + 1];  // backward residual = flow above lower
        flow.arc_flow[a] = net.arcs[a].lower + routed;
        total += static_cast<double>(flow.arc_flow[a]) * net.arcs[a].cost;
    }
    flow.total_cost = total;
    return flow;
}

Assignment flow_to_assignment(const FlowNetwork& net, const Flow& flow) {
    if (net.source < 0) throw InvalidParameterError("network lacks clustering layout");
    if (flow.arc_flow.size() != net.arcs.size()) {
        throw InvalidParameterError("flow/arc size mismatch");
    }
    Assignment sigma(static_cast<std::size_t>(net.n_points), -1);
    for (std::int64_t i = 0; i < net.n_points; ++i) {
        std::int32_t hit = -1;
        for (std::int64_t j = 0; j < net.k_centers; ++j) {
            const std::int64_t f = flow.arc_flow[net.e2_arc(i, j)];
            if (f == 0) continue;
            if (f != 1 || hit >= 0) {
                throw IntegralityError("point " + std::to_string(i) +
                                       " does not carry exactly one unit to one center");
            }
            hit = static_cast<std::int32_t>(j);
        }
        if (hit < 0) {
            throw IntegralityError("point " + std::to_string(i) + " is unassigned");
        }
        sigma[static_cast<std::size_t>(i)] = hit;
    }
    return sigma;
}

bool residual_has_negative_cycle(const FlowNetwork& net, const Flow& flow) {
    const std::size_t V = static_cast<std::size_t>(net.num_nodes);
    struct Edge {
        std::int32_t from, to;
        double cost;
    };
    std::vector<Edge> edges;
    double scale = 1.0;
    for (std::size_t a = 0; a < net.arcs.size(); ++a) {
        const Arc& arc = net.arcs[a];
        scale = std::max(scale, std::fabs(arc.cost));
        if (flow.arc_flow[a] < arc.upper) edges.push_back({arc.from, arc.to, arc.cost});
        if (flow.arc_flow[a] > arc.lower) edges.push_back({arc.to, arc.from, -arc.cost});
    }
    const double tol = 1e-9 * scale * static_cast<double>(V);

    std::vector<double> dist(V, 0.0);  // virtual super-source at distance 0
    for (std::size_t pass = 0; pass + 1 < V; ++pass) {
        bool changed = false;
        for (const Edge& e : edges) {
            const double nd = dist[static_cast<std::size_t>(e.from)] + e.cost;
            if (nd < dist[static_cast<std::size_t>(e.to)] - 1e-15) {
                dist[static_cast<std::size_t>(e.to)] = nd;
                changed = true;
            }
        }
        if (!changed) return false;
    }
    for (const Edge& e : edges) {
        if (dist[static_cast<std::size_t>(e.from)] + e.cost <
            dist[static_cast<std::size_t>(e.to)] - tol) {
            return true;
        }
    }
    return false;
}

void dump_network(const FlowNetwork& net, std::ostream& out) {
    char buf[64];
    for (const Arc& a : net.arcs) {
        out << a.from << ' ' << a.to << ' ' << a.lower << ' ' << a.upper << ' ';
        const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), a.cost);
        (void)ec;
        out.write(buf, ptr - buf);
        out << '\n';
    }
}

}  // namespace rsclust
