// SPDX-FileCopyrightText: Copyright (c) 2026 mixgraver contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "mixgraver/model.hpp"
#include "mixgraver/structure.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace mixgraver {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line)
  {
  }
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct InstanceFile {
  MipInstance instance;
  std::optional<TwoStageShape> two_stage;
  std::optional<NFoldShape> nfold;
};

/// Parses the line-oriented text format. Structural problems raise ParseError with the line number;
/// the parsed instance is validated, with failures reported against the last line.
InstanceFile parse_instance(const std::string& text);
std::string write_instance(const InstanceFile& file);
std::string write_instance(const MipInstance& inst);

}  // namespace mixgraver
