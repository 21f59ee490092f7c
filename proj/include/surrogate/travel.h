#ifndef SURROGATE_TRAVEL_H
#define SURROGATE_TRAVEL_H

#include "grounded_task.h"

#include <vector>

namespace surrogate {

enum class TravelVariant { Rendezvous, ChainSwap };

/*
  Simplified travel domain: planes fly between cities, passengers board and
  debark. Rendezvous uses four corner cities around a center city; chain-swap
  uses a line of cities.
*/
struct TravelConfig {
    TravelVariant variant = TravelVariant::Rendezvous;
    int passengers = 2;
    int planes = 1;
    int chain_length = 2;
    Cost diagonal_cost = 7000;
    Cost exterior_cost = 10000;
    Cost board_cost = 1;
    Cost debark_cost = 1;
    Cost fly_cost = 1000;
    // Optional start cities; empty means round-robin over the corners
    // (rendezvous) or the chain ends (chain-swap).
    std::vector<int> passenger_start;
    std::vector<int> plane_start;

    void validate() const;
};

inline constexpr int kRendezvousCenter = 4;

GroundedTask rendezvous_task(const TravelConfig &cfg);
GroundedTask chain_swap_task(const TravelConfig &cfg);

} // namespace surrogate

#endif
