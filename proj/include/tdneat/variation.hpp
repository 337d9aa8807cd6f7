#pragma once

#include "tdneat/config.hpp"
#include "tdneat/genome.hpp"
#include "tdneat/rng.hpp"

namespace tdneat {

enum class DelaySignal { du, dy };

// Record of one delay mutation, for inspection and testing.
struct DelayMutationOutcome {
    int old_delay = 0;
    int delta = 0;      // rounded, never 0
    int new_delay = 0;  // |old_delay + delta|
    std::vector<ConnectionGene> added;
    std::vector<ConnectionGene> removed;
};

// round(r*d1 + (1-r)*d2), half away from zero.  For r in [0,1] the result
// lies in [min(d1,d2), max(d1,d2)].
int delay_crossover(int d1, int d2, double r);

// Recombines two evaluated parents.
//
// Delays: with algo = dneat, child du = delay_crossover(du1, du2, r) with a
// fresh r per delay; with algo = neat both delays come from the fitter parent
// (coin-flipped primary on a fitness tie).  Connection genes align by
// innovation: matching genes take their weight from a random parent, and when
// the parents disagree on the enabled flag the child's gene is disabled with
// probability disabled_inherit_prob; disjoint/excess genes come from the
// fitter parent verbatim, or are kept with probability 1/2 each on a tie.
// The child's input nodes are rebuilt from its own du/dy and inherited
// connections referencing out-of-range lags are dropped.
//
// Draw order on `rng`: primary coin (ties only); r for du, r for dy (dneat);
// then per gene in ascending innovation order (weight coin / keep coin /
// enabled roll as applicable); then per matching hidden node in ascending id
// order a bias coin.
Genome crossover(const Genome& parent1, const Genome& parent2, const Config& config, Rng& rng);

// Delay-level mutation: delta ~ round(uniform[-power, power]); a zero delta
// becomes +1 or -1 with equal probability; new delay = |old + delta|.
// Shrinking removes the pruned input nodes and their outgoing connections;
// growing adds input nodes wired to every hidden node with fresh
// init-distribution weights (lag ascending, hidden id ascending).
Genome mutate_delay(const Genome& g, DelaySignal which, const Config& config, Rng& rng,
                    InnovationRegistry& registry, DelayMutationOutcome* outcome = nullptr);

// Structural operators, each an independent Bernoulli trial, applied in the
// order add-node, delete-node, add-connection, delete-connection, toggle.
// Operators that find no valid site are silent no-ops.
Genome mutate_structure(const Genome& g, const Config& config, Rng& rng,
                        InnovationRegistry& registry);

// Per connection gene (ascending innovation): a perturb roll, then gaussian
// delta if it fired, then a replace roll, then a fresh init draw if it fired;
// replacement wins when both fire.  Hidden biases follow, ascending id, with
// the bias_* parameters.
Genome mutate_weights_biases(const Genome& g, const Config& config, Rng& rng);

// Full per-offspring mutation chain: delay rolls (du then dy, dneat only),
// structure, weights and biases.
Genome mutate(const Genome& g, const Config& config, Rng& rng, InnovationRegistry& registry);

}  // namespace tdneat
