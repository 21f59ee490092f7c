#include "surrogate/travel.h"

#include <stdexcept>
#include <string>

namespace surrogate {

void TravelConfig::validate() const {
    if (passengers < 1)
        throw std::invalid_argument("travel: need at least one passenger");
    if (planes < 1)
        throw std::invalid_argument("travel: need at least one plane");
    if (variant == TravelVariant::ChainSwap && chain_length < 2)
        throw std::invalid_argument("travel: chain length must be >= 2");
    for (Cost c : {diagonal_cost, exterior_cost, board_cost, debark_cost, fly_cost})
        if (c < 1)
            throw std::invalid_argument("travel: all costs must be >= 1");
    if (!passenger_start.empty() &&
        static_cast<int>(passenger_start.size()) != passengers)
        throw std::invalid_argument("travel: passenger_start needs one city per passenger");
    if (!plane_start.empty() && static_cast<int>(plane_start.size()) != planes)
        throw std::invalid_argument("travel: plane_start needs one city per plane");
}

namespace {

struct Road {
    int from;
    int to;
    Cost cost;
};

struct Layout {
    std::string name;
    std::vector<std::string> cities;
    std::vector<Road> roads; // undirected
    std::vector<int> passenger_start;
    std::vector<int> passenger_goal;
    std::vector<int> plane_start;
};

GroundedTask build(const Layout &layout, const TravelConfig &cfg) {
    const int num_cities = static_cast<int>(layout.cities.size());
    const int num_pax = static_cast<int>(layout.passenger_start.size());
    const int num_planes = static_cast<int>(layout.plane_start.size());
    for (int c : layout.passenger_start)
        if (c < 0 || c >= num_cities)
            throw std::invalid_argument("travel: passenger start city out of range");
    for (int c : layout.plane_start)
        if (c < 0 || c >= num_cities)
            throw std::invalid_argument("travel: plane start city out of range");

    GroundedTask task;
    task.name = layout.name;
    auto at = [&](int p, int c) { return p * num_cities + c; };
    auto in = [&](int p, int pl) { return num_pax * num_cities + p * num_planes + pl; };
    auto plane_at = [&](int pl, int c) {
        return num_pax * (num_cities + num_planes) + pl * num_cities + c;
    };
    for (int p = 0; p < num_pax; ++p)
        for (int c = 0; c < num_cities; ++c)
            task.facts.push_back("at_p" + std::to_string(p) + "_" + layout.cities[c]);
    for (int p = 0; p < num_pax; ++p)
        for (int pl = 0; pl < num_planes; ++pl)
            task.facts.push_back("in_p" + std::to_string(p) + "_plane" + std::to_string(pl));
    for (int pl = 0; pl < num_planes; ++pl)
        for (int c = 0; c < num_cities; ++c)
            task.facts.push_back("plane" + std::to_string(pl) + "_at_" + layout.cities[c]);

    for (int p = 0; p < num_pax; ++p) {
        task.init.push_back(at(p, layout.passenger_start[p]));
        task.goal.push_back(at(p, layout.passenger_goal[p]));
    }
    for (int pl = 0; pl < num_planes; ++pl)
        task.init.push_back(plane_at(pl, layout.plane_start[pl]));

    for (int pl = 0; pl < num_planes; ++pl) {
        for (const Road &road : layout.roads) {
            for (auto [from, to] : {std::pair{road.from, road.to}, std::pair{road.to, road.from}}) {
                TaskAction fly;
                fly.name = "fly_plane" + std::to_string(pl) + "_" + layout.cities[from] +
                           "_" + layout.cities[to];
                fly.cost = road.cost;
                fly.pre = {plane_at(pl, from)};
                fly.add = {plane_at(pl, to)};
                fly.del = {plane_at(pl, from)};
                task.actions.push_back(std::move(fly));
            }
        }
    }
    for (int p = 0; p < num_pax; ++p) {
        for (int pl = 0; pl < num_planes; ++pl) {
            for (int c = 0; c < num_cities; ++c) {
                const std::string suffix = "_p" + std::to_string(p) + "_plane" +
                                           std::to_string(pl) + "_" + layout.cities[c];
                TaskAction board;
                board.name = "board" + suffix;
                board.cost = cfg.board_cost;
                board.pre = {at(p, c), plane_at(pl, c)};
                board.add = {in(p, pl)};
                board.del = {at(p, c)};
                task.actions.push_back(std::move(board));

                TaskAction debark;
                debark.name = "debark" + suffix;
                debark.cost = cfg.debark_cost;
                debark.pre = {in(p, pl), plane_at(pl, c)};
                debark.add = {at(p, c)};
                debark.del = {in(p, pl)};
                task.actions.push_back(std::move(debark));
            }
        }
    }
    task.canonicalize();
    task.validate();
    return task;
}

} // namespace

GroundedTask rendezvous_task(const TravelConfig &cfg) {
    cfg.validate();
    if (cfg.variant != TravelVariant::Rendezvous)
        throw std::invalid_argument("rendezvous_task: wrong variant");
    Layout layout;
    layout.name = "rendezvous_p" + std::to_string(cfg.passengers) + "_a" +
                  std::to_string(cfg.planes);
    layout.cities = {"corner0", "corner1", "corner2", "corner3", "center"};
    for (int i = 0; i < 4; ++i) {
        layout.roads.push_back({i, (i + 1) % 4, cfg.exterior_cost});
        layout.roads.push_back({i, kRendezvousCenter, cfg.diagonal_cost});
    }
    for (int p = 0; p < cfg.passengers; ++p) {
        layout.passenger_start.push_back(
            cfg.passenger_start.empty() ? p % 4 : cfg.passenger_start[p]);
        layout.passenger_goal.push_back(kRendezvousCenter);
    }
    for (int pl = 0; pl < cfg.planes; ++pl)
        layout.plane_start.push_back(cfg.plane_start.empty() ? pl % 4 : cfg.plane_start[pl]);
    return build(layout, cfg);
}

GroundedTask chain_swap_task(const TravelConfig &cfg) {
    cfg.validate();
    if (cfg.variant != TravelVariant::ChainSwap)
        throw std::invalid_argument("chain_swap_task: wrong variant");
    const int last = cfg.chain_length - 1;
    Layout layout;
    layout.name = "chain_m" + std::to_string(cfg.chain_length) + "_p" +
                  std::to_string(cfg.passengers) + "_a" + std::to_string(cfg.planes);
    for (int c = 0; c < cfg.chain_length; ++c)
        layout.cities.push_back("city" + std::to_string(c + 1));
    for (int c = 0; c < last; ++c)
        layout.roads.push_back({c, c + 1, cfg.fly_cost});
    // Passengers alternate between the two ends and travel to the other end.
    for (int p = 0; p < cfg.passengers; ++p) {
        int start = cfg.passenger_start.empty() ? (p % 2 == 0 ? 0 : last)
                                                : cfg.passenger_start[p];
        layout.passenger_start.push_back(start);
        layout.passenger_goal.push_back(start == 0 ? last : 0);
    }
    for (int pl = 0; pl < cfg.planes; ++pl)
        layout.plane_start.push_back(cfg.plane_start.empty() ? (pl % 2 == 0 ? 0 : last)
                                                             : cfg.plane_start[pl]);
    return build(layout, cfg);
}

} // namespace surrogate
