// Copyright 2026 The twosrc Authors.
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

#include <vector>

#include "twosrc/gf2q.hpp"
#include "twosrc/error.hpp"

namespace twosrc {
namespace {

// Generated by tools/gen_moduli.py. Entry q lists the exponents of the
// modulus other than x^q.
const std::vector<std::vector<unsigned>> kModulusTaps = {
    {0},
    {1, 0},
    {1, 0},
    {1, 0},
    {2, 0},
    {1, 0},
    {1, 0},
    {4, 3, 1, 0},
    {1, 0},
    {3, 0},
    {2, 0},
    {3, 0},
    {4, 3, 1, 0},
    {5, 0},
    {1, 0},
    {5, 3, 1, 0},
    {3, 0},
    {3, 0},
    {5, 2, 1, 0},
    {3, 0},
    {2, 0},
    {1, 0},
    {5, 0},
    {4, 3, 1, 0},
    {3, 0},
    {4, 3, 1, 0},
    {5, 2, 1, 0},
    {1, 0},
    {2, 0},
    {1, 0},
    {3, 0},
    {7, 3, 2, 0},
    {10, 0},
    {7, 0},
    {2, 0},
    {9, 0},
    {6, 4, 1, 0},
    {6, 5, 1, 0},
    {4, 0},
    {5, 4, 3, 0},
    {3, 0},
    {7, 0},
    {6, 4, 3, 0},
    {5, 0},
    {4, 3, 1, 0},
    {1, 0},
    {5, 0},
    {5, 3, 2, 0},
    {9, 0},
    {4, 3, 2, 0},
    {6, 3, 1, 0},
    {3, 0},
    {6, 2, 1, 0},
    {9, 0},
    {7, 0},
    {7, 4, 2, 0},
    {4, 0},
    {19, 0},
    {7, 4, 2, 0},
    {1, 0},
    {5, 2, 1, 0},
    {29, 0},
    {1, 0},
    {4, 3, 1, 0},
    {18, 0},
    {3, 0},
    {5, 2, 1, 0},
    {9, 0},
    {6, 5, 2, 0},
    {5, 3, 1, 0},
    {6, 0},
    {10, 9, 3, 0},
    {25, 0},
    {35, 0},
    {6, 3, 1, 0},
    {21, 0},
    {6, 5, 2, 0},
    {6, 5, 3, 0},
    {9, 0},
    {9, 4, 2, 0},
    {4, 0},
    {8, 3, 1, 0},
    {7, 4, 2, 0},
    {5, 0},
    {8, 2, 1, 0},
    {21, 0},
    {13, 0},
    {7, 6, 2, 0},
    {38, 0},
    {27, 0},
    {8, 5, 1, 0},
    {21, 0},
    {2, 0},
    {21, 0},
    {11, 0},
    {10, 9, 6, 0},
    {6, 0},
    {11, 0},
    {6, 3, 1, 0},
    {15, 0},
    {7, 6, 1, 0},
    {29, 0},
    {9, 0},
    {4, 3, 1, 0},
    {4, 0},
    {15, 0},
    {9, 7, 4, 0},
    {17, 0},
    {5, 4, 2, 0},
    {33, 0},
    {10, 0},
    {5, 4, 3, 0},
    {9, 0},
    {5, 3, 2, 0},
    {8, 7, 5, 0},
    {4, 2, 1, 0},
    {5, 2, 1, 0},
    {33, 0},
    {8, 0},
    {4, 3, 1, 0},
    {18, 0},
    {6, 2, 1, 0},
    {2, 0},
    {19, 0},
    {7, 6, 5, 0},
    {21, 0},
    {1, 0},
    {7, 2, 1, 0},
};

}  // namespace

Gf2Poly shipped_modulus(unsigned q) {
    if (q == 0 || q > kMaxFieldBits) {
        fail(ErrorCode::Capacity, "no shipped modulus for q=" + std::to_string(q) +
                                      " (supported range 1..128)");
    }
    Gf2Poly p = Gf2Poly::monomial(q);
    for (unsigned e : kModulusTaps[q - 1]) {
        p ^= Gf2Poly::monomial(e);
    }
    return p;
}

}  // namespace twosrc
