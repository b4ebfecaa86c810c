#include "fraclab/bubble.hpp"

namespace fraclab {

template struct Bubble<double>;
template double bubble_eval(const Bubble<double>&, const ProblemParams&, const VectorX<double>&);
template double bubble_dr(const Bubble<double>&, const ProblemParams&, const VectorX<double>&);
template double bubble_deps(const Bubble<double>&, const ProblemParams&, const VectorX<double>&);
template double frac_lap_bubble(const Bubble<double>&, const ProblemParams&,
                                const VectorX<double>&);

}  // namespace fraclab
