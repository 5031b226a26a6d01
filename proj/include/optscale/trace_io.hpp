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

/*
 * Binary trace format, explicitly little-endian on every platform:
 *
 *   bytes 0..3   magic "TMC1"
 *   bytes 4..7   d   (u32)
 *   bytes 8..15  n   (u64, number of transitions)
 *   bytes 16..23 seed (u64)
 *   then (n+1) * d doubles   (states, row-major)
 *   then n bytes             (acceptance flags, 0/1)
 *
 * States stream through the writer one at a time; acceptance flags are
 * buffered and flushed as the trailing block on close.
 */

#ifndef OPTSCALE_TRACE_IO_HPP
#define OPTSCALE_TRACE_IO_HPP

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "optscale/mcmc_kernels.hpp"

namespace optscale {

struct TraceHeader {
    std::uint32_t d = 0;
    std::uint64_t n = 0;
    std::uint64_t seed = 0;
};

class TraceWriter {
  public:
    TraceWriter(const std::string& path, std::uint32_t d, std::uint64_t n,
                std::uint64_t seed);
    ~TraceWriter();

    void write_state(const std::vector<double>& x);
    void write_accept(bool accepted);

    // Flushes the acceptance block and verifies the record counts match the
    // header. Throws std::runtime_error on a mismatch or I/O failure.
    void close();

  private:
    std::ofstream out_;
    std::string path_;
    TraceHeader header_;
    std::uint64_t states_written_ = 0;
    std::vector<std::uint8_t> accept_flags_;
    bool closed_ = false;
};

struct LoadedTrace {
    TraceHeader header;
    std::vector<std::vector<double>> states;
    std::vector<bool> accepted;
};

LoadedTrace read_trace(const std::string& path);

// Writes one in-memory trace in the binary format.
void write_trace(const std::string& path, const ChainTrace& trace);

// CSV export: header step,x1..xd,accepted; the initial state has an empty
// accepted cell.
void export_trace_csv(const LoadedTrace& trace, const std::string& path);

} // namespace optscale

#endif
