// core/include/vowelkit/parallel.h

// Copyright 2026  The vowelkit Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.
//

#ifndef VOWELKIT_PARALLEL_H_
#define VOWELKIT_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace vowelkit {

// Number of hardware threads, at least 1.
std::size_t DefaultWorkerCount();

// Calls fn(i) for i in [0, n) using up to |workers| threads. Results must be
// written to per-index slots by fn; the first exception thrown by any call is
// rethrown after all threads join.
void ParallelFor(std::size_t n, std::size_t workers,
                 const std::function<void(std::size_t)> &fn);

}  // namespace vowelkit

#endif  // VOWELKIT_PARALLEL_H_
