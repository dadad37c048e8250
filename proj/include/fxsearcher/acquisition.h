// Copyright 2026 The FxSearcher Authors
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

#ifndef FXSEARCHER_ACQUISITION_H_
#define FXSEARCHER_ACQUISITION_H_

namespace fxsearcher {

double StandardNormalPdf(double z);
double StandardNormalCdf(double z);

// Expected improvement of a Normal(mean, stddev^2) outcome over `best`:
//   (mean - best) Phi(z) + stddev phi(z),  z = (mean - best) / stddev,
// and max(mean - best, 0) when stddev == 0. Throws PreconditionError for a
// negative stddev.
double ExpectedImprovement(double mean, double stddev, double best);

}  // namespace fxsearcher

#endif  // FXSEARCHER_ACQUISITION_H_
