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
 * Error-bounded lossy codec for real-valued planes.
 *
 * Values are scanned in index order and predicted from previously *decoded*
 * values, so encoder and decoder stay synchronized. The residual is quantized
 * against the effective absolute bound; elements whose quantization code does
 * not fit the configured code width are stored verbatim as outliers. The code
 * stream is entropy-coded with a per-block canonical prefix code (runs of a
 * repeated code collapse into a run escape symbol).
 *
 * Every decoded element is guaranteed to lie within the effective absolute
 * bound of its original; lossless mode reproduces inputs bit-exactly.
 */

#ifndef QCSIM_CODEC_HPP
#define QCSIM_CODEC_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace qcsim {

enum class CodecMode : uint8_t {
    RangeRelative = 0, // bound is a fraction of the plane's value range
    Absolute = 1,      // bound is an absolute per-element tolerance
    Lossless = 2,      // bit-exact bypass
};

enum class Predictor : uint8_t {
    PreviousValue = 0,
    LinearExtrapolation = 1,
};

struct CodecConfig {
    CodecMode mode = CodecMode::RangeRelative;
    double bound = 0.01;
    int quant_code_bits = 16; // in [4, 24]
    Predictor predictor = Predictor::PreviousValue;

    /// Throws std::invalid_argument on out-of-range fields.
    void validate() const;
};

/// One compressed plane. `payload` holds the prefix-code table, the entropy
/// coded stream and the outlier list; the remaining fields form the header.
struct CompressedBlock {
    CodecMode mode = CodecMode::RangeRelative;
    Predictor predictor = Predictor::PreviousValue;
    uint8_t quant_code_bits = 16;
    uint64_t element_count = 0;
    double effective_abs_bound = 0.0;
    uint64_t outlier_count = 0;
    std::vector<uint8_t> payload;

    static constexpr size_t kHeaderBytes = 40;
    static constexpr uint8_t kFormatVersion = 1;

    /// Total serialized size (header + payload).
    uint64_t byte_size() const { return kHeaderBytes + payload.size(); }

    /// Appends the wire-format representation ("QCB1", little-endian).
    void append_bytes(std::vector<uint8_t> &out) const;
    std::vector<uint8_t> to_bytes() const;

    /// Parses one block from `bytes`. Throws CodecError on malformed input.
    /// On success `*consumed`, when non-null, receives the byte count read.
    static CompressedBlock from_bytes(std::span<const uint8_t> bytes,
                                      size_t *consumed = nullptr);
};

struct CodecStats {
    uint64_t input_bytes = 0;
    uint64_t output_bytes = 0;
    double ratio = 0.0; // input_bytes / output_bytes
    double outlier_fraction = 0.0;
};

/// Compresses one plane. Throws std::invalid_argument on empty or non-finite
/// input or on an invalid config.
std::pair<CompressedBlock, CodecStats>
compress_plane(std::span<const double> values, const CodecConfig &config);

/// Inverse of compress_plane. Deterministic; throws CodecError on corrupt or
/// truncated blocks.
std::vector<double> decompress_plane(const CompressedBlock &block);

inline double compression_ratio(const CodecStats &stats) {
    return static_cast<double>(stats.input_bytes) /
           static_cast<double>(stats.output_bytes);
}

} // namespace qcsim

#endif // QCSIM_CODEC_HPP
