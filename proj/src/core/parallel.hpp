// SPDX-License-Identifier: Apache-2.0
#ifndef AVL_CORE_PARALLEL_HPP
#define AVL_CORE_PARALLEL_HPP

#include <functional>

namespace avl {

// Worker count: AVL_THREADS env var caps it, 0 or unset means auto.
int worker_count();

// Runs fn(i) for i in [0, n) on contiguous chunks.  Each index owns its own
// output slot, so results are independent of the partition.
void parallel_for(int n, const std::function<void(int)>& fn);

} // namespace avl

#endif
