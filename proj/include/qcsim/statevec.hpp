// Copyright 2026 The qcsim Authors
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

/**
 * @file
 * Sliced quantum state vectors.
 *
 * An n-qubit state holds 2^n complex amplitudes split into 2^(n-s) slices of
 * 2^s amplitudes each; global index g lives in slice g >> s at offset
 * g & (2^s - 1). Each slice stores its real and imaginary components as two
 * separate contiguous planes (predictor-friendly for the codec) and is either
 * dense or compressed, never both.
 */

#ifndef QCSIM_STATEVEC_HPP
#define QCSIM_STATEVEC_HPP

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <variant>
#include <vector>

#include "qcsim/codec.hpp"

namespace qcsim {

using Amplitude = std::complex<double>;

constexpr uint64_t slice_of_index(uint64_t global, int slice_bits) {
    return global >> slice_bits;
}

constexpr uint64_t offset_of_index(uint64_t global, int slice_bits) {
    return global & ((uint64_t{1} << slice_bits) - 1);
}

/// Default slice size: at most 2^20 amplitudes (16 MiB dense).
constexpr int default_slice_bits(int num_qubits) {
    return num_qubits < 20 ? num_qubits : 20;
}

struct DensePlanes {
    std::vector<double> re;
    std::vector<double> im;

    size_t size() const { return re.size(); }
};

struct CompressedPlanes {
    CompressedBlock re;
    CompressedBlock im;

    uint64_t byte_size() const { return re.byte_size() + im.byte_size(); }
};

struct Slice {
    uint64_t index = 0;
    std::variant<DensePlanes, CompressedPlanes> payload;
    double sq_norm = 0.0; // Sum of |amplitude|^2 at last compression.

    bool is_dense() const {
        return std::holds_alternative<DensePlanes>(payload);
    }
    DensePlanes &dense() { return std::get<DensePlanes>(payload); }
    const DensePlanes &dense() const { return std::get<DensePlanes>(payload); }
    const CompressedPlanes &blocks() const {
        return std::get<CompressedPlanes>(payload);
    }
};

/// Decompresses (or copies) a slice's planes.
DensePlanes slice_planes(const Slice &slice);

/// Sum of |amplitude|^2 over a pair of planes (compensated summation).
double planes_sq_norm(const DensePlanes &planes);

class StateVector {
  public:
    /// All-zero amplitudes; callers must set content before use.
    StateVector(int num_qubits, int slice_bits);

    int num_qubits() const { return num_qubits_; }
    int slice_bits() const { return slice_bits_; }
    uint64_t num_amplitudes() const { return uint64_t{1} << num_qubits_; }
    uint64_t num_slices() const { return slices_.size(); }
    uint64_t slice_size() const { return uint64_t{1} << slice_bits_; }

    /// Memory a fully dense copy would take: 2^(n+4) bytes.
    uint64_t dense_bytes() const { return uint64_t{16} << num_qubits_; }

    std::vector<Slice> &slices() { return slices_; }
    const std::vector<Slice> &slices() const { return slices_; }

    /// Reads one amplitude, decompressing its slice if needed. Intended for
    /// tests and spot checks, not bulk access.
    Amplitude amplitude(uint64_t global_index) const;

  private:
    int num_qubits_;
    int slice_bits_;
    std::vector<Slice> slices_;
};

/// |basis_index> with the given slicing. slice_bits < 0 selects the default.
StateVector init_basis_state(int num_qubits, uint64_t basis_index,
                             int slice_bits = -1);

/// Builds a dense sliced state from a full amplitude array (2^n entries).
StateVector state_from_amplitudes(int num_qubits,
                                  std::span<const Amplitude> amplitudes,
                                  int slice_bits = -1);

/// Materializes all 2^n amplitudes. Guarded: throws CapacityError when
/// num_qubits exceeds `guard_qubits`.
std::vector<Amplitude> to_amplitudes(const StateVector &state,
                                     int guard_qubits = 28);

double global_sq_norm(const StateVector &state);
Amplitude inner_product(const StateVector &a, const StateVector &b);
double fidelity(const StateVector &a, const StateVector &b);

/// State dump: 16-byte header ("QSV1", u32 n, u32 reserved, 4 pad bytes),
/// then 2^n little-endian (re, im) f64 pairs in global index order.
void write_state_dump(const StateVector &state, std::ostream &out);
StateVector read_state_dump(std::istream &in, int slice_bits = -1);

} // namespace qcsim

#endif // QCSIM_STATEVEC_HPP
