/*################################################################################
  ##
  ##   Copyright (C) 2024-2026 the optscale authors
  ##
  ##   This file is part of the optscale library.
  ##
  ##   Licensed under the Apache License, Version 2.0 (the "License");
  ##   you may not use this file except in compliance with the License.
  ##   You may obtain a copy of the License at
  ##
  ##       http://www.apache.org/licenses/LICENSE-2.0
  ##
  ##   Unless required by applicable law or agreed to in writing, software
  ##   distributed under the License is distributed on an "AS IS" BASIS,
  ##   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
  ##   See the License for the specific language governing permissions and
  ##   limitations under the License.
  ##
  ################################################################################*/

#include "optscale/trace_io.hpp"

#include <bit>
#include <cstring>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace optscale {

namespace {

constexpr char kMagic[4] = {'T', 'M', 'C', '1'};

void put_u32(std::string& buf, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) {
        buf.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
    }
}

void put_u64(std::string& buf, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
        buf.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
    }
}

std::uint32_t get_u32(const unsigned char* p) {
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) {
        v = (v << 8) | p[i];
    }
    return v;
}

std::uint64_t get_u64(const unsigned char* p) {
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) {
        v = (v << 8) | p[i];
    }
    return v;
}

void put_f64(std::string& buf, double x) {
    put_u64(buf, std::bit_cast<std::uint64_t>(x));
}

double get_f64(const unsigned char* p) {
    return std::bit_cast<double>(get_u64(p));
}

} // namespace

TraceWriter::TraceWriter(const std::string& path, std::uint32_t d,
                         std::uint64_t n, std::uint64_t seed)
    : out_(path, std::ios::binary | std::ios::trunc), path_(path),
      header_{d, n, seed} {
    if (!out_) {
        throw std::runtime_error("cannot open trace file for writing: " +
                                 path);
    }
    if (d == 0) {
        throw std::invalid_argument("trace dimension must be positive");
    }
    std::string buf;
    buf.append(kMagic, 4);
    put_u32(buf, d);
    put_u64(buf, n);
    put_u64(buf, seed);
    out_.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    accept_flags_.reserve(n);
}

TraceWriter::~TraceWriter() {
    // Destruction without close() leaves a truncated file; close() is the
    // integrity point and must be called explicitly.
    if (!closed_ && out_.is_open()) {
        out_.close();
    }
}

void TraceWriter::write_state(const std::vector<double>& x) {
    if (x.size() != header_.d) {
        throw std::invalid_argument("trace state has wrong dimension");
    }
    std::string buf;
    buf.reserve(8 * x.size());
    for (const double xi : x) {
        put_f64(buf, xi);
    }
    out_.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    ++states_written_;
}

void TraceWriter::write_accept(bool accepted) {
    accept_flags_.push_back(accepted ? 1 : 0);
}

void TraceWriter::close() {
    if (closed_) {
        return;
    }
    if (states_written_ != header_.n + 1 ||
        accept_flags_.size() != header_.n) {
        throw std::runtime_error("trace record counts disagree with header");
    }
    if (!accept_flags_.empty()) {
        out_.write(reinterpret_cast<const char*>(accept_flags_.data()),
                   static_cast<std::streamsize>(accept_flags_.size()));
    }
    out_.close();
    if (!out_) {
        throw std::runtime_error("I/O failure while writing trace: " + path_);
    }
    closed_ = true;
}

LoadedTrace read_trace(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open trace file: " + path);
    }
    std::string raw((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
    if (raw.size() < 24 || std::memcmp(raw.data(), kMagic, 4) != 0) {
        throw std::runtime_error("not a trace file: " + path);
    }
    const auto* p = reinterpret_cast<const unsigned char*>(raw.data());
    LoadedTrace t;
    t.header.d = get_u32(p + 4);
    t.header.n = get_u64(p + 8);
    t.header.seed = get_u64(p + 16);
    const std::uint64_t want =
        24 + (t.header.n + 1) * t.header.d * 8 + t.header.n;
    if (raw.size() != want) {
        throw std::runtime_error("trace file truncated or oversized: " + path);
    }
    std::size_t off = 24;
    t.states.resize(t.header.n + 1);
    for (auto& state : t.states) {
        state.resize(t.header.d);
        for (auto& xi : state) {
            xi = get_f64(p + off);
            off += 8;
        }
    }
    t.accepted.resize(t.header.n);
    for (std::uint64_t k = 0; k < t.header.n; ++k) {
        t.accepted[k] = p[off + k] != 0;
    }
    return t;
}

void write_trace(const std::string& path, const ChainTrace& trace) {
    if (trace.states.empty()) {
        throw std::invalid_argument("cannot write an empty trace");
    }
    TraceWriter w(path, static_cast<std::uint32_t>(trace.states[0].size()),
                  trace.accepted.size(), trace.seed);
    for (const auto& s : trace.states) {
        w.write_state(s);
    }
    for (const bool a : trace.accepted) {
        w.write_accept(a);
    }
    w.close();
}

void export_trace_csv(const LoadedTrace& trace, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open CSV file for writing: " + path);
    }
    out << "step";
    for (std::uint32_t i = 1; i <= trace.header.d; ++i) {
        out << ",x" << i;
    }
    out << ",accepted\n";
    out << std::setprecision(17);
    for (std::size_t k = 0; k < trace.states.size(); ++k) {
        out << k;
        for (const double xi : trace.states[k]) {
            out << "," << xi;
        }
        if (k == 0) {
            out << ",";
        } else {
            out << "," << (trace.accepted[k - 1] ? 1 : 0);
        }
        out << "\n";
    }
    if (!out) {
        throw std::runtime_error("I/O failure while writing CSV: " + path);
    }
}

} // namespace optscale
