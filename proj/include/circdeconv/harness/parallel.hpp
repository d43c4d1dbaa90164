// Copyright 2026 The circdeconv Authors.
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


// Index-parallel loop over a bounded worker pool.

#ifndef CIRCDECONV_HARNESS_PARALLEL_HPP_
#define CIRCDECONV_HARNESS_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace circdeconv {

/// Calls body(i) for i in [0, count) using at most `threads` workers
/// (0 = hardware default). Exceptions thrown by body are rethrown.
void parallel_for_index(std::size_t count, std::size_t threads,
                        const std::function<void(std::size_t)>& body);

}  // namespace circdeconv

#endif  // CIRCDECONV_HARNESS_PARALLEL_HPP_
