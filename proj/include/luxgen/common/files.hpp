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

#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>

namespace luxgen::files {

/// Writes through a sibling temporary file and renames it into place, so
/// readers never observe a partially written file. Creates parent
/// directories. Throws Error("write-failed").
void write_atomic(const std::filesystem::path &path, const std::function<void(std::ostream &)> &write);

/// Whole file as bytes. Throws Error("read-failed") naming the path.
std::string read_all(const std::filesystem::path &path);

}  // namespace luxgen::files
