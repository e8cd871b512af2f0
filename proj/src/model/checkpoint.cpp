// Copyright (c) 2026 The LuxGen Toolkit Authors. All Rights Reserved.
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

#include "luxgen/model/checkpoint.hpp"

#include "luxgen/common/error.hpp"
#include "luxgen/common/files.hpp"
#include "luxgen/common/rng.hpp"
#include "luxgen/model/config_json.hpp"

#include <json.hpp>

#include <bit>
#include <cstring>
#include <ostream>

namespace luxgen::model {

namespace {

constexpr char magic[8] = {'L', 'U', 'X', 'G', 'E', 'N', 'C', 'K'};

template <typename U>
void put_le(std::string &out, U value) {
    for (std::size_t i = 0; i < sizeof(U); ++i) {
        out.push_back(static_cast<char>((value >> (8 * i)) & 0xFF));
    }
}

template <typename U>
U get_le(const std::string &in, std::size_t &pos) {
    if (pos + sizeof(U) > in.size()) {
        throw Error("corrupt-checkpoint", "checkpoint is truncated");
    }
    U value = 0;
    for (std::size_t i = 0; i < sizeof(U); ++i) {
        value |= static_cast<U>(static_cast<unsigned char>(in[pos + i])) << (8 * i);
    }
    pos += sizeof(U);
    return value;
}

}  // namespace

Checkpoint new_checkpoint(const ModelConfig &model, const TrainConfig &train, const std::string &vocab_fingerprint,
                          std::uint64_t init_seed) {
    Checkpoint c;
    c.model = model;
    c.train = train;
    c.params = init_weights<float>(model, init_seed);
    c.adam = make_adam_state<float>(model);
    c.rng_state = Rng(train.seed).state();
    c.vocab_fingerprint = vocab_fingerprint;
    return c;
}

void save_checkpoint(const Checkpoint &c, const std::filesystem::path &path) {
    nlohmann::json tensors = nlohmann::json::array();
    for (const TensorShape &s : tensor_shapes(c.model)) {
        tensors.push_back({{"name", s.name}, {"rows", s.rows}, {"cols", s.cols}});
    }
    const nlohmann::json header{{"format", "luxgen-checkpoint"},
                                {"model", c.model},
                                {"train", c.train},
                                {"stage", c.stage},
                                {"step", c.step},
                                {"adam_step", c.adam.step},
                                {"rng_state", c.rng_state},
                                {"vocab_fingerprint", c.vocab_fingerprint},
                                {"tensors", tensors}};
    const std::string header_text = header.dump();

    std::string payload;
    visit_tensors(
        [&](const std::string &, TensorKind, const Matrix<float> &p, const Matrix<float> &m, const Matrix<float> &v) {
            for (const Matrix<float> *t : {&p, &m, &v}) {
                for (Eigen::Index i = 0; i < t->size(); ++i) {
                    put_le(payload, std::bit_cast<std::uint32_t>(t->data()[i]));
                }
            }
        },
        c.params, c.adam.first, c.adam.second);

    std::string prefix(magic, sizeof(magic));
    put_le<std::uint32_t>(prefix, checkpoint_version);
    put_le<std::uint64_t>(prefix, header_text.size());
    std::string suffix;
    put_le<std::uint64_t>(suffix, fnv1a(payload));
    files::write_atomic(path, [&](std::ostream &out) {
        out.write(prefix.data(), static_cast<std::streamsize>(prefix.size()));
        out.write(header_text.data(), static_cast<std::streamsize>(header_text.size()));
        out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
        out.write(suffix.data(), static_cast<std::streamsize>(suffix.size()));
    });
}

Checkpoint load_checkpoint(const std::filesystem::path &path) {
    const std::string bytes = files::read_all(path);
    if (bytes.size() < sizeof(magic) || std::memcmp(bytes.data(), magic, sizeof(magic)) != 0) {
        throw Error("corrupt-checkpoint", path.string() + " is not a luxgen checkpoint");
    }
    std::size_t pos = sizeof(magic);
    const auto version = get_le<std::uint32_t>(bytes, pos);
    if (version != checkpoint_version) {
        throw Error("version-mismatch", "checkpoint version " + std::to_string(version) + " is not supported (expected " +
                                            std::to_string(checkpoint_version) + ")");
    }
    const auto header_size = get_le<std::uint64_t>(bytes, pos);
    if (pos + header_size > bytes.size()) {
        throw Error("corrupt-checkpoint", "checkpoint header is truncated");
    }
    nlohmann::json header;
    try {
        header = nlohmann::json::parse(bytes.substr(pos, header_size));
    } catch (const nlohmann::json::exception &e) {
        throw Error("corrupt-checkpoint", std::string("malformed checkpoint header: ") + e.what());
    }
    pos += header_size;

    Checkpoint c;
    try {
        c.model = header.at("model").get<ModelConfig>();
        c.train = header.at("train").get<TrainConfig>();
        c.stage = header.at("stage").get<std::string>();
        c.step = header.at("step").get<std::int64_t>();
        c.rng_state = header.at("rng_state").get<std::string>();
        c.vocab_fingerprint = header.at("vocab_fingerprint").get<std::string>();
        c.adam.step = header.at("adam_step").get<std::int64_t>();
    } catch (const nlohmann::json::exception &e) {
        throw Error("corrupt-checkpoint", std::string("incomplete checkpoint header: ") + e.what());
    }
    const std::vector<TensorShape> shapes = tensor_shapes(c.model);
    const auto &listed = header.at("tensors");
    if (listed.size() != shapes.size()) {
        throw Error("checkpoint-mismatch", "checkpoint lists " + std::to_string(listed.size()) +
                                               " tensors but its model config implies " + std::to_string(shapes.size()));
    }
    for (std::size_t i = 0; i < shapes.size(); ++i) {
        if (listed[i].at("name") != shapes[i].name || listed[i].at("rows") != shapes[i].rows ||
            listed[i].at("cols") != shapes[i].cols) {
            throw Error("checkpoint-mismatch", "tensor " + std::to_string(i) + " (" + shapes[i].name +
                                                   ") has a shape that disagrees with the model config");
        }
    }

    std::int64_t floats = 0;
    for (const TensorShape &s : shapes) {
        floats += 3 * s.rows * s.cols;
    }
    const std::size_t payload_size = static_cast<std::size_t>(floats) * 4;
    if (pos + payload_size + 8 != bytes.size()) {
        throw Error("corrupt-checkpoint", "checkpoint payload is truncated or has trailing bytes");
    }
    const std::uint64_t expected = fnv1a(std::string_view(bytes).substr(pos, payload_size));
    std::size_t check_pos = pos + payload_size;
    if (get_le<std::uint64_t>(bytes, check_pos) != expected) {
        throw Error("corrupt-checkpoint", "checkpoint checksum mismatch");
    }

    c.params = make_weights<float>(c.model);
    c.adam.first = make_weights<float>(c.model);
    c.adam.second = make_weights<float>(c.model);
    visit_tensors(
        [&](const std::string &, TensorKind, Matrix<float> &p, Matrix<float> &m, Matrix<float> &v) {
            for (Matrix<float> *t : {&p, &m, &v}) {
                for (Eigen::Index i = 0; i < t->size(); ++i) {
                    t->data()[i] = std::bit_cast<float>(get_le<std::uint32_t>(bytes, pos));
                }
            }
        },
        c.params, c.adam.first, c.adam.second);
    return c;
}

}  // namespace luxgen::model
