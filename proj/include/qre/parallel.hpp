// Copyright 2026 The qre-bounds Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

namespace qre {

// Worker count available to the OpenMP kernels: OpenMP's max thread count,
// optionally capped by the QRE_THREADS environment variable (read once).
// Returns 1 when built without OpenMP.
int max_threads();

// Parses a QRE_THREADS-style value; returns 0 when the value is absent or
// not a positive integer. Split out so the parsing is unit-testable.
int parse_thread_cap(const char* value);

}  // namespace qre
