#pragma once

#include <random>
#include <string>
#include <vector>

#include "csmv/csm.hpp"
#include "csmv/formula.hpp"
#include "csmv/system.hpp"

namespace testutil {

// Random formula over a pool of atoms. Size is bounded by `budget` internal
// nodes; constants appear occasionally so folding paths get exercised.
inline csmv::Formula random_formula(std::mt19937_64& rng,
                                    const std::vector<std::string>& atom_pool,
                                    int budget) {
  std::uniform_int_distribution<int> shape(0, 9);
  if (budget <= 0 || atom_pool.empty() || shape(rng) < 3) {
    std::uniform_int_distribution<int> leaf(0, 9);
    const int c = leaf(rng);
    if (atom_pool.empty() || c == 0) return csmv::Formula::constant(c % 2 == 0);
    if (c == 1) return csmv::Formula::constant(true);
    std::uniform_int_distribution<std::size_t> pick(0, atom_pool.size() - 1);
    return csmv::Formula::atom(atom_pool[pick(rng)]);
  }
  const int kind = shape(rng);
  if (kind < 5) {  // 3..4: negation
    return csmv::Formula::negation(random_formula(rng, atom_pool, budget - 1));
  }
  std::uniform_int_distribution<int> width_dist(2, 3);
  const int width = width_dist(rng);
  std::vector<csmv::Formula> parts;
  for (int i = 0; i < width; ++i)
    parts.push_back(random_formula(rng, atom_pool, budget / width));
  if (kind < 7) return csmv::Formula::conjunction(std::move(parts));
  return csmv::Formula::disjunction(std::move(parts));
}

// Random subset of `pool` where each element is kept with probability num/den.
inline csmv::SymbolSet random_subset(std::mt19937_64& rng,
                                     const std::vector<std::string>& pool,
                                     int num, int den) {
  csmv::SymbolSet out;
  std::uniform_int_distribution<int> coin(1, den);
  for (const auto& s : pool)
    if (coin(rng) <= num) out.insert(s);
  return out;
}

// Small random system: up to `max_machines` machines over a shared pool of at
// most six symbols, every machine made complete by the closure. The result
// always validates, so it can be composed and simulated directly.
inline csmv::SystemModel random_system(std::mt19937_64& rng,
                                       std::size_t max_machines = 3,
                                       std::size_t max_states = 4) {
  static const std::vector<std::string> kPool = {"a", "b", "c", "d", "e", "f"};
  std::uniform_int_distribution<std::size_t> pool_size_dist(2, kPool.size());
  const std::vector<std::string> pool(kPool.begin(),
                                      kPool.begin() + pool_size_dist(rng));

  csmv::SystemModel sys;
  sys.name = "random";
  std::uniform_int_distribution<std::size_t> machine_count(1, max_machines);
  const std::size_t machines = machine_count(rng);

  for (std::size_t mi = 0; mi < machines; ++mi) {
    csmv::Csm m;
    m.name = "R" + std::to_string(mi);
    m.input_alphabet = random_subset(rng, pool, 2, 3);
    m.output_alphabet = random_subset(rng, pool, 1, 3);
    const std::vector<std::string> inputs(m.input_alphabet.begin(),
                                          m.input_alphabet.end());
    const std::vector<std::string> outputs(m.output_alphabet.begin(),
                                           m.output_alphabet.end());

    std::uniform_int_distribution<std::size_t> state_count(1, max_states);
    const std::size_t states = state_count(rng);
    for (std::size_t si = 0; si < states; ++si)
      m.states.push_back(
          {"s" + std::to_string(si), random_subset(rng, outputs, 1, 3)});
    m.initial = "s0";

    std::uniform_int_distribution<std::size_t> trans_count(0, 3);
    std::uniform_int_distribution<std::size_t> target(0, states - 1);
    for (std::size_t si = 0; si < states; ++si) {
      const std::size_t n = trans_count(rng);
      for (std::size_t t = 0; t < n; ++t) {
        csmv::Formula guard = random_formula(rng, inputs, 4);
        if (guard.is_false() || !csmv::is_satisfiable(guard)) continue;
        m.transitions.push_back({"s" + std::to_string(si), std::move(guard),
                                 "s" + std::to_string(target(rng))});
      }
    }
    sys.machines.push_back(csmv::completeness_closure(m));
  }
  return sys;
}

}  // namespace testutil
