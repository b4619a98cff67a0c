// Copyright 2026 The splitsim developers
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

#ifndef SPLITSIM_SHOT_ARCHIVE_HPP
#define SPLITSIM_SHOT_ARCHIVE_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace splitsim {

/// Bit matrix of measurement (or detector) outcomes, one row per shot,
/// packed 64 columns per word.
struct ShotBuffer {
    size_t n_shots = 0;
    size_t n_columns = 0;
    size_t words_per_shot = 0;
    std::vector<uint64_t> words;

    ShotBuffer() = default;
    ShotBuffer(size_t shots, size_t columns)
        : n_shots(shots),
          n_columns(columns),
          words_per_shot((columns + 63) / 64),
          words(shots * ((columns + 63) / 64), 0) {}

    bool get(size_t shot, size_t col) const {
        return (words[shot * words_per_shot + (col >> 6)] >> (col & 63)) & 1;
    }
    void set(size_t shot, size_t col, bool v) {
        uint64_t &w = words[shot * words_per_shot + (col >> 6)];
        uint64_t m = uint64_t{1} << (col & 63);
        w = v ? (w | m) : (w & ~m);
    }
    const uint64_t *row(size_t shot) const { return &words[shot * words_per_shot]; }
    uint64_t *row(size_t shot) { return &words[shot * words_per_shot]; }
};

/// Shot archive format: one JSON header line
///   {"n_shots": ..., "n_measurements": ..., "labels": [...]}
/// followed by bit-packed rows, each padded to a byte boundary, with
/// little-endian bit order within bytes.
void write_shot_archive(std::ostream &out, const ShotBuffer &shots,
                        const std::vector<std::string> &labels);
void write_shot_archive(const std::string &path, const ShotBuffer &shots,
                        const std::vector<std::string> &labels);

struct ShotArchive {
    ShotBuffer shots;
    std::vector<std::string> labels;
};

ShotArchive read_shot_archive(std::istream &in);
ShotArchive read_shot_archive(const std::string &path);

}  // namespace splitsim

#endif
