#ifndef PROBCOV_WORD_EXPAND_HPP
#define PROBCOV_WORD_EXPAND_HPP

#include "probcov/exec_model.hpp"

namespace probcov {

// k-word expansion: every node of the result carries a window of k
// consecutive states of some execution, sharp-padded past the end of the
// run, with an artificial sharp root and terminal. Executions and their
// probabilities are in bijection with those of the input. Windows arising
// from the same underlying node tuple are shared.
// Requires e.word_length() == 1 and k >= 2.
ExecModel expand(const ExecModel& e, int k);

} // namespace probcov

#endif
