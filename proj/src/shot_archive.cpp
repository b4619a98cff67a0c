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

#include "splitsim/shot_archive.hpp"

#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace splitsim {

void write_shot_archive(std::ostream &out, const ShotBuffer &shots,
                        const std::vector<std::string> &labels) {
    if (labels.size() != shots.n_columns) {
        throw std::invalid_argument("label count does not match shot columns");
    }
    nlohmann::json header;
    header["n_shots"] = shots.n_shots;
    header["n_measurements"] = shots.n_columns;
    header["labels"] = labels;
    out << header.dump() << "\n";
    size_t row_bytes = (shots.n_columns + 7) / 8;
    std::vector<uint8_t> row(row_bytes);
    for (size_t s = 0; s < shots.n_shots; s++) {
        const uint64_t *w = shots.row(s);
        for (size_t b = 0; b < row_bytes; b++) {
            row[b] = static_cast<uint8_t>(w[b >> 3] >> ((b & 7) * 8));
        }
        out.write(reinterpret_cast<const char *>(row.data()), static_cast<std::streamsize>(row_bytes));
    }
}

void write_shot_archive(const std::string &path, const ShotBuffer &shots,
                        const std::vector<std::string> &labels) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open " + path + " for writing");
    }
    write_shot_archive(out, shots, labels);
}

ShotArchive read_shot_archive(std::istream &in) {
    std::string header_line;
    if (!std::getline(in, header_line)) {
        throw std::runtime_error("missing shot archive header");
    }
    auto header = nlohmann::json::parse(header_line);
    ShotArchive archive;
    size_t n_shots = header.at("n_shots");
    size_t n_meas = header.at("n_measurements");
    archive.labels = header.at("labels").get<std::vector<std::string>>();
    if (archive.labels.size() != n_meas) {
        throw std::runtime_error("corrupt shot archive header");
    }
    archive.shots = ShotBuffer(n_shots, n_meas);
    size_t row_bytes = (n_meas + 7) / 8;
    std::vector<uint8_t> row(row_bytes);
    for (size_t s = 0; s < n_shots; s++) {
        in.read(reinterpret_cast<char *>(row.data()), static_cast<std::streamsize>(row_bytes));
        if (!in) {
            throw std::runtime_error("truncated shot archive");
        }
        uint64_t *w = archive.shots.row(s);
        for (size_t b = 0; b < row_bytes; b++) {
            w[b >> 3] |= static_cast<uint64_t>(row[b]) << ((b & 7) * 8);
        }
    }
    return archive;
}

ShotArchive read_shot_archive(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    return read_shot_archive(in);
}

}  // namespace splitsim
