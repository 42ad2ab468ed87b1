#pragma once

#include "rlm/graph.hpp"
#include "rlm/loops.hpp"
#include "rlm/marks.hpp"
#include "rlm/observables.hpp"

namespace rlm {

/// Change in the loop count caused by inserting one cross or one bar.
struct SurgeryPrediction {
  int delta_cross = 0;
  int delta_bar = 0;

  friend bool operator==(const SurgeryPrediction&, const SurgeryPrediction&) = default;
};

/// Copy of `marks` with one extra mark at (e, s). Throws InvalidArgument if
/// s already carries a mark.
MarkConfig insert_mark(const MarkConfig& marks, EdgeId e, double s, MarkKind kind);

/// Split-merge-rewire rule:
///   different loops            -> (-1, -1)  either mark merges them;
///   same loop, same direction  -> (+1,  0)  a cross splits, a bar rewires;
///   same loop, opposite        -> ( 0, +1)  a bar splits, a cross rewires.
SurgeryPrediction predict(const Graph& g, const MarkConfig& marks, const LoopSet& loops, EdgeId e,
                          double s);
SurgeryPrediction prediction_for(EdgeTimeClass c);

struct SurgeryOutcome {
  SurgeryPrediction predicted;
  SurgeryPrediction observed;

  bool matches() const { return predicted == observed; }
};

/// Retraces after inserting each kind of mark and compares with predict().
SurgeryOutcome verify_detailed(const Graph& g, const MarkConfig& marks, const LoopSet& loops,
                               EdgeId e, double s);
bool verify(const Graph& g, const MarkConfig& marks, const LoopSet& loops, EdgeId e, double s);

}  // namespace rlm
