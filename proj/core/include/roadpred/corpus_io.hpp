// Copyright 2026 The roadpred Authors
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

#ifndef ROADPRED_CORPUS_IO_HPP_
#define ROADPRED_CORPUS_IO_HPP_

#include <filesystem>

#include "roadpred/types.hpp"

namespace roadpred
{

/// Writes a processed corpus as a versioned, line-oriented text file:
/// a `roadpred-corpus,1` header, optional `provenance` lines, and one
/// `trajectory` metadata line followed by its `state` lines per trajectory.
/// Floating-point fields are written with enough digits to round-trip
/// exactly. Raw per-sample velocities are not serialized; a processed
/// corpus carries derived orientations instead.
void write_corpus(const Corpus & corpus, const std::filesystem::path & path);

/// Reads a file written by write_corpus. Throws ParseError with the
/// offending line on malformed input or a duplicate (recording, track) key.
Corpus read_corpus(const std::filesystem::path & path);

}  // namespace roadpred

#endif  // ROADPRED_CORPUS_IO_HPP_
