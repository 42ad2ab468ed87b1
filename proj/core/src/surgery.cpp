#include "rlm/surgery.hpp"

namespace rlm {

MarkConfig insert_mark(const MarkConfig& marks, EdgeId e, double s, MarkKind kind) {
  return marks.with_mark({e, s, kind});
}

SurgeryPrediction prediction_for(EdgeTimeClass c) {
  switch (c) {
    case EdgeTimeClass::DifferentLoops: return {-1, -1};
    case EdgeTimeClass::SameLoopSameOrientation: return {+1, 0};
    case EdgeTimeClass::SameLoopOppositeOrientation: return {0, +1};
  }
  return {};
}

SurgeryPrediction predict(const Graph& g, const MarkConfig& marks, const LoopSet& loops, EdgeId e,
                          double s) {
  return prediction_for(classify(g, marks, loops, e, s));
}

SurgeryOutcome verify_detailed(const Graph& g, const MarkConfig& marks, const LoopSet& loops,
                               EdgeId e, double s) {
  SurgeryOutcome out;
  out.predicted = predict(g, marks, loops, e, s);
  const auto before = static_cast<int>(loops.num_loops());
  const auto with_cross = trace_loops(g, insert_mark(marks, e, s, MarkKind::Cross));
  const auto with_bar = trace_loops(g, insert_mark(marks, e, s, MarkKind::Bar));
  out.observed = {static_cast<int>(with_cross.num_loops()) - before,
                  static_cast<int>(with_bar.num_loops()) - before};
  return out;
}

bool verify(const Graph& g, const MarkConfig& marks, const LoopSet& loops, EdgeId e, double s) {
  return verify_detailed(g, marks, loops, e, s).matches();
}

}  // namespace rlm
