// Copyright 2026 The ddbpp Authors
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

#ifndef DDBPP_GENERATOR_H_
#define DDBPP_GENERATOR_H_

#include <cstdint>
#include <random>
#include <string>

#include "ddbpp/model.h"

namespace ddbpp {

// Seeded 64-bit stream with platform-independent bounded draws.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t Next() { return engine_(); }
  // Uniform integer in [lo, hi] by rejection sampling.
  int64_t UniformInt(int64_t lo, int64_t hi);
  // Uniform real in [lo, hi) from 53 random bits.
  double UniformReal(double lo, double hi);

 private:
  std::mt19937_64 engine_;
};

struct GeneratorSpec {
  int category = 1;  // 1..10
  char due_class = 'A';
  int n = 20;
  uint64_t seed = 0;
};

// Bin side for a category (P is always 100).
int CategoryBinSide(int category);
// beta numerator over 5: A -> 3, B -> 4, C -> 5.
int DueClassBetaFifths(char due_class);

// Draws item sides for every item first (for categories 7-10 the type, then
// width, then height), then due dates in item order from the discrete
// uniform on [101, max(101, floor(beta * P * LB))] where LB is the bin-count
// lower bound of the generated items. Throws std::invalid_argument for a bad
// spec.
Instance GenerateInstance(const GeneratorSpec& spec);

// Appends tau - 1 copies of every item; the copies get fresh due dates drawn
// as above with LB computed on the enlarged item set.
Instance DuplicateItems(const Instance& inst, int tau, char due_class,
                        uint64_t seed);

// "cat<C>_cls<X>_n<N>_s<seed>.2bpp"
std::string InstanceFileName(const GeneratorSpec& spec);
// Inverse of InstanceFileName on the stem; false when it does not match.
bool ParseInstanceFileName(const std::string& name, GeneratorSpec* spec);

}  // namespace ddbpp

#endif  // DDBPP_GENERATOR_H_
