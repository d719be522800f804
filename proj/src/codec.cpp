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

#include "qcsim/codec.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <limits>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "qcsim/errors.hpp"

namespace qcsim {

namespace {

constexpr uint32_t kOutlierSymbol = 0;
// Runs of a repeated quantization code collapse into one escape symbol
// followed by an Elias-gamma coded repeat count. Without it the prefix code
// floors at one bit per element, which caps the ratio at 64x for doubles.
constexpr uint64_t kMinRunRepeats = 4;
constexpr int kMaxCodeLength = 57;
constexpr size_t kOutlierRecordBytes = 16; // u64 position + f64 value

uint32_t run_symbol(int quant_code_bits) { return 1u << quant_code_bits; }

// --- little-endian field serialization -------------------------------------

void put_u32(std::vector<uint8_t> &out, uint32_t v) {
    for (int i = 0; i < 4; ++i)
        out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

void put_u64(std::vector<uint8_t> &out, uint64_t v) {
    for (int i = 0; i < 8; ++i)
        out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

void put_f64(std::vector<uint8_t> &out, double v) {
    put_u64(out, std::bit_cast<uint64_t>(v));
}

uint32_t get_u32(std::span<const uint8_t> b, size_t pos) {
    uint32_t v = 0;
    for (int i = 3; i >= 0; --i)
        v = (v << 8) | b[pos + static_cast<size_t>(i)];
    return v;
}

uint64_t get_u64(std::span<const uint8_t> b, size_t pos) {
    uint64_t v = 0;
    for (int i = 7; i >= 0; --i)
        v = (v << 8) | b[pos + static_cast<size_t>(i)];
    return v;
}

double get_f64(std::span<const uint8_t> b, size_t pos) {
    return std::bit_cast<double>(get_u64(b, pos));
}

// --- bit streams (MSB-first within each byte) -------------------------------

class BitWriter {
  public:
    explicit BitWriter(std::vector<uint8_t> &out) : out_(out) {}

    void put_bits(uint64_t value, int nbits) {
        // nbits <= kMaxCodeLength keeps the accumulator from overflowing.
        acc_ = (acc_ << nbits) |
               (nbits == 64 ? value : (value & ((1ull << nbits) - 1)));
        pending_ += nbits;
        while (pending_ >= 8) {
            pending_ -= 8;
            out_.push_back(static_cast<uint8_t>((acc_ >> pending_) & 0xFF));
        }
    }

    void put_gamma(uint64_t v) {
        int width = std::bit_width(v);
        int zeros = width - 1;
        while (zeros > 32) {
            put_bits(0, 32);
            zeros -= 32;
        }
        put_bits(0, zeros);
        if (width > 32) {
            put_bits(v >> 32, width - 32);
            put_bits(v & 0xFFFFFFFFull, 32);
        } else {
            put_bits(v, width);
        }
    }

    void finish() {
        if (pending_ > 0) {
            out_.push_back(
                static_cast<uint8_t>((acc_ << (8 - pending_)) & 0xFF));
            pending_ = 0;
        }
    }

  private:
    std::vector<uint8_t> &out_;
    uint64_t acc_ = 0;
    int pending_ = 0;
};

class BitReader {
  public:
    explicit BitReader(std::span<const uint8_t> data) : data_(data) {}

    int get_bit() {
        if (byte_ >= data_.size())
            throw CodecError("code stream truncated");
        int b = (data_[byte_] >> (7 - bit_)) & 1;
        if (++bit_ == 8) {
            bit_ = 0;
            ++byte_;
        }
        return b;
    }

    uint64_t get_gamma() {
        int zeros = 0;
        while (get_bit() == 0) {
            if (++zeros > 63)
                throw CodecError("run length out of range");
        }
        uint64_t v = 1;
        for (int i = 0; i < zeros; ++i)
            v = (v << 1) | static_cast<uint64_t>(get_bit());
        return v;
    }

    size_t bytes_consumed() const { return byte_ + (bit_ != 0 ? 1 : 0); }

  private:
    std::span<const uint8_t> data_;
    size_t byte_ = 0;
    int bit_ = 0;
};

// --- canonical prefix code --------------------------------------------------

struct CodeEntry {
    uint32_t symbol;
    uint8_t length;
};

// Code lengths via the two-queue Huffman construction. Leaves enter sorted by
// (count, symbol) and ties prefer the leaf queue, so lengths are a pure
// function of the histogram.
std::vector<CodeEntry>
huffman_code_lengths(const std::vector<std::pair<uint32_t, uint64_t>> &freq) {
    size_t n = freq.size();
    std::vector<CodeEntry> entries(n);
    for (size_t i = 0; i < n; ++i)
        entries[i].symbol = freq[i].first;
    if (n == 1) {
        entries[0].length = 1;
        return entries;
    }

    std::vector<size_t> order(n);
    for (size_t i = 0; i < n; ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        if (freq[a].second != freq[b].second)
            return freq[a].second < freq[b].second;
        return freq[a].first < freq[b].first;
    });

    struct Node {
        uint64_t count;
        int parent = -1;
    };
    std::vector<Node> nodes;
    nodes.reserve(2 * n - 1);
    for (size_t i = 0; i < n; ++i)
        nodes.push_back({freq[i].second, -1});

    std::vector<size_t> internals;
    size_t leaf_pos = 0, int_pos = 0;
    auto take_min = [&]() -> size_t {
        bool leaf_ok = leaf_pos < n;
        bool int_ok = int_pos < internals.size();
        bool pick_leaf =
            leaf_ok && (!int_ok || nodes[order[leaf_pos]].count <=
                                       nodes[internals[int_pos]].count);
        return pick_leaf ? order[leaf_pos++] : internals[int_pos++];
    };
    while (true) {
        size_t remaining = (n - leaf_pos) + (internals.size() - int_pos);
        if (remaining < 2)
            break;
        size_t a = take_min();
        size_t b = take_min();
        size_t parent = nodes.size();
        nodes.push_back({nodes[a].count + nodes[b].count, -1});
        nodes[a].parent = static_cast<int>(parent);
        nodes[b].parent = static_cast<int>(parent);
        internals.push_back(parent);
    }

    for (size_t i = 0; i < n; ++i) {
        int depth = 0;
        for (int p = nodes[i].parent; p >= 0; p = nodes[p].parent)
            ++depth;
        if (depth < 1 || depth > kMaxCodeLength)
            throw CodecError("prefix code depth out of range");
        entries[i].length = static_cast<uint8_t>(depth);
    }
    return entries;
}

// Canonical code values: symbols ordered by (length, symbol) get consecutive
// codes, shifted left on each length increase.
void assign_canonical_codes(std::vector<CodeEntry> &entries,
                            std::vector<uint64_t> &codes) {
    std::sort(entries.begin(), entries.end(),
              [](const CodeEntry &a, const CodeEntry &b) {
                  if (a.length != b.length)
                      return a.length < b.length;
                  return a.symbol < b.symbol;
              });
    codes.resize(entries.size());
    uint64_t code = 0;
    uint8_t prev_len = entries.empty() ? 0 : entries[0].length;
    for (size_t i = 0; i < entries.size(); ++i) {
        code <<= (entries[i].length - prev_len);
        prev_len = entries[i].length;
        codes[i] = code++;
    }
}

class PrefixDecoder {
  public:
    explicit PrefixDecoder(std::vector<CodeEntry> entries)
        : entries_(std::move(entries)) {
        std::vector<uint64_t> codes;
        assign_canonical_codes(entries_, codes);
        max_len_ = entries_.back().length;
        first_code_.assign(max_len_ + 1, 0);
        base_index_.assign(max_len_ + 1, 0);
        count_.assign(max_len_ + 1, 0);
        double kraft = 0.0;
        for (size_t i = 0; i < entries_.size(); ++i) {
            uint8_t len = entries_[i].length;
            if (count_[len] == 0) {
                first_code_[len] = codes[i];
                base_index_[len] = i;
            }
            ++count_[len];
            kraft += std::ldexp(1.0, -static_cast<int>(len));
        }
        if (kraft > 1.0 + 1e-9)
            throw CodecError("prefix code table overfull");
    }

    uint32_t decode(BitReader &reader) const {
        uint64_t acc = 0;
        for (int len = 1; len <= max_len_; ++len) {
            acc = (acc << 1) | static_cast<uint64_t>(reader.get_bit());
            if (count_[len] != 0) {
                uint64_t offset = acc - first_code_[len];
                if (acc >= first_code_[len] && offset < count_[len])
                    return entries_[base_index_[len] + offset].symbol;
            }
        }
        throw CodecError("invalid prefix code in stream");
    }

  private:
    std::vector<CodeEntry> entries_;
    std::vector<uint64_t> first_code_;
    std::vector<size_t> base_index_;
    std::vector<uint64_t> count_;
    int max_len_ = 0;
};

// --- prediction --------------------------------------------------------------

inline double predict(const std::vector<double> &decoded, size_t i,
                      Predictor predictor) {
    if (predictor == Predictor::PreviousValue)
        return i > 0 ? decoded[i - 1] : 0.0;
    if (i == 0)
        return 0.0;
    if (i == 1)
        return decoded[0];
    return 2.0 * decoded[i - 1] - decoded[i - 2];
}

double effective_bound(std::span<const double> values,
                       const CodecConfig &config) {
    switch (config.mode) {
    case CodecMode::Lossless:
        return 0.0;
    case CodecMode::Absolute:
        return config.bound;
    case CodecMode::RangeRelative: {
        auto [lo, hi] = std::minmax_element(values.begin(), values.end());
        double eb = config.bound * (*hi - *lo);
        if (!std::isfinite(eb))
            eb = std::numeric_limits<double>::max();
        if (eb == 0.0)
            eb = 0.0; // canonicalize a possible -0.0
        return eb;
    }
    }
    throw std::invalid_argument("unknown codec mode");
}

} // namespace

void CodecConfig::validate() const {
    if (quant_code_bits < 4 || quant_code_bits > 24)
        throw std::invalid_argument("quant_code_bits must be in [4, 24]");
    if (mode != CodecMode::Lossless) {
        if (!(bound > 0.0) || !std::isfinite(bound))
            throw std::invalid_argument("error bound must be positive");
        if (mode == CodecMode::RangeRelative && bound > 1.0)
            throw std::invalid_argument(
                "range-relative bound must not exceed 1");
    }
}

void CompressedBlock::append_bytes(std::vector<uint8_t> &out) const {
    out.push_back('Q');
    out.push_back('C');
    out.push_back('B');
    out.push_back('1');
    out.push_back(kFormatVersion);
    out.push_back(static_cast<uint8_t>(mode));
    out.push_back(static_cast<uint8_t>(predictor));
    out.push_back(quant_code_bits);
    put_u64(out, element_count);
    put_f64(out, effective_abs_bound);
    put_u64(out, outlier_count);
    put_u64(out, payload.size());
    out.insert(out.end(), payload.begin(), payload.end());
}

std::vector<uint8_t> CompressedBlock::to_bytes() const {
    std::vector<uint8_t> out;
    out.reserve(byte_size());
    append_bytes(out);
    return out;
}

CompressedBlock CompressedBlock::from_bytes(std::span<const uint8_t> bytes,
                                            size_t *consumed) {
    if (bytes.size() < kHeaderBytes)
        throw CodecError("block header truncated");
    if (bytes[0] != 'Q' || bytes[1] != 'C' || bytes[2] != 'B' ||
        bytes[3] != '1')
        throw CodecError("bad block magic");
    if (bytes[4] != kFormatVersion)
        throw CodecError("unsupported block version " +
                         std::to_string(bytes[4]));

    CompressedBlock block;
    if (bytes[5] > 2)
        throw CodecError("bad codec mode byte");
    if (bytes[6] > 1)
        throw CodecError("bad predictor byte");
    block.mode = static_cast<CodecMode>(bytes[5]);
    block.predictor = static_cast<Predictor>(bytes[6]);
    block.quant_code_bits = bytes[7];
    if (block.quant_code_bits < 4 || block.quant_code_bits > 24)
        throw CodecError("quant_code_bits out of range");
    block.element_count = get_u64(bytes, 8);
    block.effective_abs_bound = get_f64(bytes, 16);
    block.outlier_count = get_u64(bytes, 24);
    uint64_t payload_bytes = get_u64(bytes, 32);

    if (block.element_count == 0)
        throw CodecError("element_count must be at least 1");
    if (block.outlier_count > block.element_count)
        throw CodecError("outlier_count exceeds element_count");
    if (!(block.effective_abs_bound >= 0.0) ||
        !std::isfinite(block.effective_abs_bound))
        throw CodecError("bad effective_abs_bound");
    if (payload_bytes > bytes.size() - kHeaderBytes)
        throw CodecError("block payload truncated");

    block.payload.assign(bytes.begin() + kHeaderBytes,
                         bytes.begin() + kHeaderBytes +
                             static_cast<size_t>(payload_bytes));
    if (consumed != nullptr)
        *consumed = kHeaderBytes + static_cast<size_t>(payload_bytes);
    return block;
}

std::pair<CompressedBlock, CodecStats>
compress_plane(std::span<const double> values, const CodecConfig &config) {
    config.validate();
    if (values.empty())
        throw std::invalid_argument("cannot compress an empty plane");
    for (double v : values)
        if (!std::isfinite(v))
            throw std::invalid_argument("plane contains a non-finite value");

    const size_t n = values.size();
    const int qb = config.quant_code_bits;
    const int64_t half = int64_t{1} << (qb - 1);
    const double eb = effective_bound(values, config);

    // Closed-loop quantization: predictions come from the decoded sequence so
    // the decoder reproduces them exactly. With eb == 0 only bitwise-exact
    // predictions earn a code; everything else is a verbatim outlier.
    std::vector<double> decoded(n);
    std::vector<uint32_t> symbols(n);
    std::vector<std::pair<uint64_t, double>> outliers;
    for (size_t i = 0; i < n; ++i) {
        double pred = predict(decoded, i, config.predictor);
        double rec = 0.0;
        uint32_t sym = kOutlierSymbol;
        if (eb == 0.0) {
            if (std::bit_cast<uint64_t>(values[i]) ==
                std::bit_cast<uint64_t>(pred)) {
                sym = static_cast<uint32_t>(half); // m == 0
                rec = pred;
            }
        } else {
            double r = (values[i] - pred) / (2.0 * eb);
            if (std::isfinite(r) && std::fabs(r) < static_cast<double>(half)) {
                int64_t m = std::llround(r);
                if (m > -half && m < half) {
                    rec = pred + 2.0 * eb * static_cast<double>(m);
                    if (std::isfinite(rec) &&
                        std::fabs(values[i] - rec) <= eb)
                        sym = static_cast<uint32_t>(m + half);
                }
            }
        }
        if (sym == kOutlierSymbol) {
            rec = values[i];
            outliers.emplace_back(i, values[i]);
        }
        decoded[i] = rec;
        symbols[i] = sym;
    }

    // Collapse maximal runs of a repeated code into (literal, run) pairs.
    struct Token {
        uint32_t sym;
        uint64_t repeats; // nonzero only for the run escape
    };
    const uint32_t run_sym = run_symbol(qb);
    std::vector<Token> tokens;
    tokens.reserve(n);
    for (size_t i = 0; i < n;) {
        uint32_t s = symbols[i];
        size_t j = i + 1;
        while (j < n && symbols[j] == s)
            ++j;
        uint64_t len = j - i;
        if (s != kOutlierSymbol && len >= kMinRunRepeats + 1) {
            tokens.push_back({s, 0});
            tokens.push_back({run_sym, len - 1});
        } else {
            for (uint64_t k = 0; k < len; ++k)
                tokens.push_back({s, 0});
        }
        i = j;
    }

    std::unordered_map<uint32_t, uint64_t> hist;
    for (const Token &t : tokens)
        ++hist[t.sym];
    std::vector<std::pair<uint32_t, uint64_t>> freq(hist.begin(), hist.end());
    std::sort(freq.begin(), freq.end());

    std::vector<CodeEntry> entries = huffman_code_lengths(freq);
    std::vector<uint64_t> codes;
    assign_canonical_codes(entries, codes);
    std::unordered_map<uint32_t, std::pair<uint64_t, uint8_t>> code_of;
    code_of.reserve(entries.size());
    for (size_t i = 0; i < entries.size(); ++i)
        code_of[entries[i].symbol] = {codes[i], entries[i].length};

    CompressedBlock block;
    block.mode = config.mode;
    block.predictor = config.predictor;
    block.quant_code_bits = static_cast<uint8_t>(qb);
    block.element_count = n;
    block.effective_abs_bound = eb;
    block.outlier_count = outliers.size();

    // Payload: prefix-code table, code stream, outlier list.
    std::vector<uint8_t> &payload = block.payload;
    put_u32(payload, static_cast<uint32_t>(freq.size()));
    for (const auto &[sym, count] : freq) {
        put_u32(payload, sym);
        payload.push_back(code_of[sym].second);
    }
    BitWriter writer(payload);
    for (const Token &t : tokens) {
        auto [code, len] = code_of[t.sym];
        writer.put_bits(code, len);
        if (t.sym == run_sym)
            writer.put_gamma(t.repeats);
    }
    writer.finish();
    for (const auto &[pos, value] : outliers) {
        put_u64(payload, pos);
        put_f64(payload, value);
    }

    CodecStats stats;
    stats.input_bytes = 8 * static_cast<uint64_t>(n);
    stats.output_bytes = block.byte_size();
    stats.ratio = compression_ratio(stats);
    stats.outlier_fraction =
        static_cast<double>(outliers.size()) / static_cast<double>(n);
    return {std::move(block), stats};
}

std::vector<double> decompress_plane(const CompressedBlock &block) {
    const size_t n = static_cast<size_t>(block.element_count);
    if (n == 0)
        throw CodecError("element_count must be at least 1");
    if (block.quant_code_bits < 4 || block.quant_code_bits > 24)
        throw CodecError("quant_code_bits out of range");
    const int qb = block.quant_code_bits;
    const int64_t half = int64_t{1} << (qb - 1);
    const uint32_t run_sym = run_symbol(qb);
    const double eb = block.effective_abs_bound;
    if (!(eb >= 0.0) || !std::isfinite(eb))
        throw CodecError("bad effective_abs_bound");

    std::span<const uint8_t> payload(block.payload);
    if (payload.size() < 4)
        throw CodecError("payload smaller than code table header");
    uint32_t table_count = get_u32(payload, 0);
    size_t table_bytes = 4 + static_cast<size_t>(table_count) * 5;
    if (table_count == 0)
        throw CodecError("empty prefix-code table");
    if (payload.size() < table_bytes)
        throw CodecError("code table truncated");

    std::vector<CodeEntry> entries;
    entries.reserve(table_count);
    uint32_t prev_sym = 0;
    for (uint32_t i = 0; i < table_count; ++i) {
        uint32_t sym = get_u32(payload, 4 + static_cast<size_t>(i) * 5);
        uint8_t len = payload[4 + static_cast<size_t>(i) * 5 + 4];
        if (i > 0 && sym <= prev_sym)
            throw CodecError("code table symbols not strictly increasing");
        if (sym > run_sym)
            throw CodecError("code table symbol out of range");
        if (len < 1 || len > kMaxCodeLength)
            throw CodecError("code length out of range");
        entries.push_back({sym, len});
        prev_sym = sym;
    }
    PrefixDecoder decoder(std::move(entries));

    size_t outlier_bytes =
        static_cast<size_t>(block.outlier_count) * kOutlierRecordBytes;
    if (payload.size() < table_bytes + outlier_bytes)
        throw CodecError("payload/header length mismatch");
    size_t stream_bytes = payload.size() - table_bytes - outlier_bytes;
    std::span<const uint8_t> stream = payload.subspan(table_bytes,
                                                      stream_bytes);
    std::span<const uint8_t> outlier_region =
        payload.subspan(table_bytes + stream_bytes, outlier_bytes);

    std::vector<double> decoded(n);
    BitReader reader(stream);
    size_t outlier_cursor = 0;
    size_t i = 0;
    uint32_t last_literal = run_sym; // sentinel: no literal seen yet

    auto emit = [&](uint32_t sym) {
        double pred = predict(decoded, i, block.predictor);
        if (sym == kOutlierSymbol) {
            if (outlier_cursor >= block.outlier_count)
                throw CodecError("outlier list exhausted early");
            size_t at = outlier_cursor * kOutlierRecordBytes;
            uint64_t pos = get_u64(outlier_region, at);
            if (pos != i)
                throw CodecError("outlier position mismatch");
            decoded[i] = get_f64(outlier_region, at + 8);
            ++outlier_cursor;
        } else {
            int64_t m = static_cast<int64_t>(sym) - half;
            // eb == 0 codes are bitwise-exact prediction hits; adding 0.0
            // would turn a -0.0 prediction into +0.0.
            decoded[i] = eb == 0.0 ? pred
                                   : pred + 2.0 * eb * static_cast<double>(m);
        }
        ++i;
    };

    while (i < n) {
        uint32_t sym = decoder.decode(reader);
        if (sym == run_sym) {
            if (last_literal == run_sym || last_literal == kOutlierSymbol)
                throw CodecError("run escape without preceding code");
            uint64_t repeats = reader.get_gamma();
            if (repeats > n - i)
                throw CodecError("run overflows element count");
            for (uint64_t k = 0; k < repeats; ++k)
                emit(last_literal);
        } else {
            emit(sym);
            last_literal = sym;
        }
    }

    if (outlier_cursor != block.outlier_count)
        throw CodecError("unused trailing outliers");
    if (reader.bytes_consumed() != stream_bytes)
        throw CodecError("code stream length mismatch");
    return decoded;
}

} // namespace qcsim
