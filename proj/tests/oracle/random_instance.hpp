#pragma once

#include <random>
#include <string>
#include <vector>

#include "vrpdecomp/instance.hpp"

namespace oracle {

/// Small random site-based instance with integral coordinates; tight enough
/// that brute-force enumeration stays cheap.
inline vrpdecomp::Instance random_instance(unsigned seed, int n, int capacity = 5, int vehicles = 3) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> coord(0, 20), dem(1, 2), open(0, 60), width(15, 50), serv(0, 3);
  std::vector<vrpdecomp::Instance::Site> sites;
  vrpdecomp::Instance::Site depot;
  depot.at = {10, 10};
  depot.due = 1200;
  sites.push_back(depot);
  for (int i = 0; i < n; ++i) {
    vrpdecomp::Instance::Site s;
    s.at = {static_cast<double>(coord(rng)), static_cast<double>(coord(rng))};
    s.demand = dem(rng);
    s.ready = 10 * open(rng);
    s.due = s.ready + 10 * width(rng);
    s.service = 10 * serv(rng);
    sites.push_back(s);
  }
  return vrpdecomp::Instance::from_sites("RAND-" + std::to_string(seed), vehicles, capacity, sites);
}

}  // namespace oracle
