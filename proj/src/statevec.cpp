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

#include "qcsim/statevec.hpp"

#include <bit>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "qcsim/errors.hpp"

namespace qcsim {

namespace {

// Kahan-compensated accumulator; the fidelity and norm checks downstream sit
// at 1e-12 and plain summation over 2^20 terms gets too close to that.
class CompensatedSum {
  public:
    void add(double x) {
        double y = x - carry_;
        double t = sum_ + y;
        carry_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

  private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

void check_qubit_count(int num_qubits) {
    if (num_qubits < 1 || num_qubits > 62)
        throw std::invalid_argument("qubit count must be in [1, 62]");
}

void check_slice_bits(int num_qubits, int slice_bits) {
    if (slice_bits < 0 || slice_bits > num_qubits)
        throw std::invalid_argument("slice_bits must be in [0, num_qubits]");
}

void put_u32_le(std::ostream &out, uint32_t v) {
    char bytes[4];
    for (int i = 0; i < 4; ++i)
        bytes[i] = static_cast<char>(v >> (8 * i));
    out.write(bytes, 4);
}

void put_f64_le(std::ostream &out, double v) {
    uint64_t bits = std::bit_cast<uint64_t>(v);
    char bytes[8];
    for (int i = 0; i < 8; ++i)
        bytes[i] = static_cast<char>(bits >> (8 * i));
    out.write(bytes, 8);
}

uint32_t get_u32_le(std::istream &in) {
    unsigned char bytes[4];
    in.read(reinterpret_cast<char *>(bytes), 4);
    uint32_t v = 0;
    for (int i = 3; i >= 0; --i)
        v = (v << 8) | bytes[i];
    return v;
}

double get_f64_le(std::istream &in) {
    unsigned char bytes[8];
    in.read(reinterpret_cast<char *>(bytes), 8);
    uint64_t v = 0;
    for (int i = 7; i >= 0; --i)
        v = (v << 8) | bytes[i];
    return std::bit_cast<double>(v);
}

} // namespace

DensePlanes slice_planes(const Slice &slice) {
    if (slice.is_dense())
        return slice.dense();
    const CompressedPlanes &cp = slice.blocks();
    return DensePlanes{decompress_plane(cp.re), decompress_plane(cp.im)};
}

double planes_sq_norm(const DensePlanes &planes) {
    CompensatedSum sum;
    for (size_t i = 0; i < planes.size(); ++i)
        sum.add(planes.re[i] * planes.re[i] + planes.im[i] * planes.im[i]);
    return sum.value();
}

StateVector::StateVector(int num_qubits, int slice_bits)
    : num_qubits_(num_qubits), slice_bits_(slice_bits) {
    check_qubit_count(num_qubits);
    check_slice_bits(num_qubits, slice_bits);
    uint64_t count = uint64_t{1} << (num_qubits - slice_bits);
    uint64_t size = uint64_t{1} << slice_bits;
    slices_.resize(count);
    for (uint64_t j = 0; j < count; ++j) {
        slices_[j].index = j;
        slices_[j].payload = DensePlanes{std::vector<double>(size),
                                         std::vector<double>(size)};
    }
}

Amplitude StateVector::amplitude(uint64_t global_index) const {
    if (global_index >= num_amplitudes())
        throw std::invalid_argument("amplitude index out of range");
    const Slice &slice = slices_[slice_of_index(global_index, slice_bits_)];
    uint64_t k = offset_of_index(global_index, slice_bits_);
    if (slice.is_dense())
        return {slice.dense().re[k], slice.dense().im[k]};
    DensePlanes planes = slice_planes(slice);
    return {planes.re[k], planes.im[k]};
}

StateVector init_basis_state(int num_qubits, uint64_t basis_index,
                             int slice_bits) {
    check_qubit_count(num_qubits);
    if (slice_bits < 0)
        slice_bits = default_slice_bits(num_qubits);
    check_slice_bits(num_qubits, slice_bits);
    if (basis_index >= (uint64_t{1} << num_qubits))
        throw std::invalid_argument("basis index out of range");

    StateVector state(num_qubits, slice_bits);
    uint64_t j = slice_of_index(basis_index, slice_bits);
    state.slices()[j].dense().re[offset_of_index(basis_index, slice_bits)] =
        1.0;
    state.slices()[j].sq_norm = 1.0;
    return state;
}

StateVector state_from_amplitudes(int num_qubits,
                                  std::span<const Amplitude> amplitudes,
                                  int slice_bits) {
    check_qubit_count(num_qubits);
    if (slice_bits < 0)
        slice_bits = default_slice_bits(num_qubits);
    check_slice_bits(num_qubits, slice_bits);
    if (amplitudes.size() != (uint64_t{1} << num_qubits))
        throw std::invalid_argument("amplitude count must be 2^n");

    StateVector state(num_qubits, slice_bits);
    for (Slice &slice : state.slices()) {
        DensePlanes &planes = slice.dense();
        uint64_t base = slice.index << slice_bits;
        for (uint64_t k = 0; k < state.slice_size(); ++k) {
            planes.re[k] = amplitudes[base + k].real();
            planes.im[k] = amplitudes[base + k].imag();
        }
        slice.sq_norm = planes_sq_norm(planes);
    }
    return state;
}

std::vector<Amplitude> to_amplitudes(const StateVector &state,
                                     int guard_qubits) {
    if (state.num_qubits() > guard_qubits)
        throw CapacityError("dense materialization of " +
                            std::to_string(state.num_qubits()) +
                            " qubits exceeds the " +
                            std::to_string(guard_qubits) + "-qubit guard");
    std::vector<Amplitude> amps(state.num_amplitudes());
    for (const Slice &slice : state.slices()) {
        DensePlanes planes = slice_planes(slice);
        uint64_t base = slice.index << state.slice_bits();
        for (uint64_t k = 0; k < state.slice_size(); ++k)
            amps[base + k] = {planes.re[k], planes.im[k]};
    }
    return amps;
}

double global_sq_norm(const StateVector &state) {
    CompensatedSum sum;
    for (const Slice &slice : state.slices()) {
        DensePlanes planes = slice_planes(slice);
        for (size_t i = 0; i < planes.size(); ++i)
            sum.add(planes.re[i] * planes.re[i] +
                    planes.im[i] * planes.im[i]);
    }
    return sum.value();
}

Amplitude inner_product(const StateVector &a, const StateVector &b) {
    if (a.num_qubits() != b.num_qubits())
        throw std::invalid_argument("inner product dimension mismatch");

    // Walk the coarser-sliced state once per slice; the finer slicing always
    // divides it evenly (both are powers of two).
    const StateVector &fine =
        a.slice_bits() <= b.slice_bits() ? a : b;
    const StateVector &coarse =
        a.slice_bits() <= b.slice_bits() ? b : a;
    bool conjugate_fine = &fine == &a;

    CompensatedSum sum_re;
    CompensatedSum sum_im;
    uint64_t fine_size = fine.slice_size();
    uint64_t per_coarse = coarse.slice_size() / fine_size;

    for (const Slice &cs : coarse.slices()) {
        DensePlanes cp = slice_planes(cs);
        uint64_t first_fine = cs.index * per_coarse;
        for (uint64_t f = 0; f < per_coarse; ++f) {
            DensePlanes fp = slice_planes(fine.slices()[first_fine + f]);
            uint64_t cbase = f * fine_size;
            for (uint64_t k = 0; k < fine_size; ++k) {
                double ar, ai, br, bi;
                if (conjugate_fine) {
                    ar = fp.re[k];
                    ai = fp.im[k];
                    br = cp.re[cbase + k];
                    bi = cp.im[cbase + k];
                } else {
                    ar = cp.re[cbase + k];
                    ai = cp.im[cbase + k];
                    br = fp.re[k];
                    bi = fp.im[k];
                }
                // conj(a) * b
                sum_re.add(ar * br + ai * bi);
                sum_im.add(ar * bi - ai * br);
            }
        }
    }
    return {sum_re.value(), sum_im.value()};
}

double fidelity(const StateVector &a, const StateVector &b) {
    Amplitude ip = inner_product(a, b);
    return ip.real() * ip.real() + ip.imag() * ip.imag();
}

void write_state_dump(const StateVector &state, std::ostream &out) {
    out.write("QSV1", 4);
    put_u32_le(out, static_cast<uint32_t>(state.num_qubits()));
    put_u32_le(out, 0); // reserved
    put_u32_le(out, 0); // pad to a 16-byte header
    for (const Slice &slice : state.slices()) {
        DensePlanes planes = slice_planes(slice);
        for (size_t k = 0; k < planes.size(); ++k) {
            put_f64_le(out, planes.re[k]);
            put_f64_le(out, planes.im[k]);
        }
    }
    if (!out)
        throw std::runtime_error("state dump write failed");
}

StateVector read_state_dump(std::istream &in, int slice_bits) {
    char magic[4];
    in.read(magic, 4);
    if (!in || std::string(magic, 4) != "QSV1")
        throw std::runtime_error("not a state dump (bad magic)");
    uint32_t n = get_u32_le(in);
    get_u32_le(in); // reserved
    get_u32_le(in); // pad
    if (!in || n < 1 || n > 62)
        throw std::runtime_error("state dump header corrupt");

    int num_qubits = static_cast<int>(n);
    if (slice_bits < 0)
        slice_bits = default_slice_bits(num_qubits);
    check_slice_bits(num_qubits, slice_bits);

    StateVector state(num_qubits, slice_bits);
    for (Slice &slice : state.slices()) {
        DensePlanes &planes = slice.dense();
        for (size_t k = 0; k < planes.size(); ++k) {
            planes.re[k] = get_f64_le(in);
            planes.im[k] = get_f64_le(in);
        }
        if (!in)
            throw std::runtime_error("state dump truncated");
        slice.sq_norm = planes_sq_norm(planes);
    }
    return state;
}

} // namespace qcsim
