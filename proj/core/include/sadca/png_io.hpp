// Copyright 2026 The SADCA Authors.
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

#ifndef SADCA_PNG_IO_HPP_
#define SADCA_PNG_IO_HPP_

#include <filesystem>

#include "sadca/image.hpp"

namespace sadca {

// 8-bit gray, gray+alpha, RGB or RGBA; alpha is dropped. Values become x/255.
ImageTensor read_png(const std::filesystem::path& path);

// Quantizes to 8 bits with round(x * 255). 1 or 3 channels.
void write_png(const std::filesystem::path& path, const ImageTensor& image);

}  // namespace sadca

#endif  // SADCA_PNG_IO_HPP_
