#pragma once

#include "patbreak/encode.hpp"

namespace patbreak {

struct CounterExample {
  GraphBits graph;
  Permutation perm;
  int index = 0;  // position where perm(graph) is strictly smaller
};

struct LayerRun {
  PermClass cls = PermClass::All;
  int iterations = 0;
  int patterns_added = 0;
  std::size_t psi_size_after = 0;
  double seconds = 0;
  PatternSet psi_snapshot;  // break accumulated through this layer
};

struct CegarRun {
  Order order;
  std::vector<LayerRun> layers;
  PatternSet psi;
  bool complete = false;
  int total_iterations = 0;
  std::size_t reduced_removed = 0;
  double reduce_seconds = 0;
};

struct CegarOptions {
  std::vector<PermClass> layers{PermClass::Ct, PermClass::T, PermClass::CiT,
                                PermClass::Di, PermClass::I, PermClass::All};
  bool reduce = false;
};

// One CEGAR layer on an existing solver context: repeatedly extract a
// counter-example (graph, permutation of the layer class), derive its
// pattern, and block it. Returns when the layer is saturated.
struct LayerContext;
int cegar_layer(LayerContext& ctx, PatternSet& psi, PermClass cls);

// Runs the layers in order, accumulating patterns; each layer gets a fresh
// solver seeded with the problem clauses and the clauses of the patterns
// found so far. The final layer "all" makes the break complete.
CegarRun layered_cegar(Order order, const CegarOptions& options = {},
                       const sat::CnfFormula* problem = nullptr);

// Removes patterns whose deletion keeps the break complete, scanning in
// reverse insertion order. Throws if the input is not complete.
PatternSet reduce_break(const PatternSet& psi, Order order,
                        const sat::CnfFormula* problem = nullptr);

// UNSAT certificate: no graph in the (possibly problem-restricted) space is
// uncovered yet reducible by some permutation.
bool verify_complete(const PatternSet& psi, Order order,
                     const sat::CnfFormula* problem = nullptr);

}  // namespace patbreak
