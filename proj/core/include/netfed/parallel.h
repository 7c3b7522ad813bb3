// Copyright 2026 The netfed Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NETFED_PARALLEL_H_
#define NETFED_PARALLEL_H_

#include <functional>

namespace netfed {

// Worker count: NETFED_THREADS if set to a positive integer, otherwise the
// hardware concurrency (at least 1).
int ThreadBudget();

// Calls fn(i) for i in [0, n) on up to `threads` workers using contiguous
// blocks. fn must only write to per-index storage. The first exception
// thrown by any worker is rethrown after all workers join.
void ParallelFor(int n, int threads, const std::function<void(int)>& fn);

}  // namespace netfed

#endif  // NETFED_PARALLEL_H_
