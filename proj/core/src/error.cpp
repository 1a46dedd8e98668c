// Copyright 2026 The qcc Authors
// SPDX-License-Identifier: Apache-2.0

#include "qcc/error.hpp"

namespace qcc {

std::string SrcPos::str() const {
  return std::to_string(line) + ":" + std::to_string(col);
}

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::Syntax: return "SyntaxError";
    case ErrorKind::UnknownGate: return "UnknownGate";
    case ErrorKind::UndefinedModule: return "UndefinedModule";
    case ErrorKind::UndefinedName: return "UndefinedName";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::TypeMismatch: return "TypeMismatch";
    case ErrorKind::Recursion: return "RecursionError";
    case ErrorKind::NonConstantControl: return "NonConstantControl";
    case ErrorKind::BlowupLimit: return "BlowupLimit";
    case ErrorKind::StepLimit: return "StepLimit";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::Overlap: return "OverlapError";
    case ErrorKind::Width: return "WidthError";
    case ErrorKind::ControlOverlap: return "ControlOverlap";
    case ErrorKind::NoBorrowAvailable: return "NoBorrowAvailable";
    case ErrorKind::WidthMismatch: return "WidthMismatch";
    case ErrorKind::TooManyQubits: return "TooManyQubits";
    case ErrorKind::Semantic: return "SemanticError";
    case ErrorKind::Io: return "IoError";
  }
  return "Error";
}

Error::Error(ErrorKind kind, std::string msg, SrcPos pos, std::string origin)
    : std::runtime_error(render(kind, msg, pos, origin)),
      kind_(kind),
      msg_(std::move(msg)),
      pos_(pos),
      origin_(std::move(origin)) {}

std::string Error::render(ErrorKind k, const std::string& msg, SrcPos pos,
                          const std::string& origin) {
  std::string out;
  if (!origin.empty()) out += origin + ":";
  if (pos.valid()) out += pos.str() + ":";
  if (!out.empty()) out += " ";
  out += error_kind_name(k);
  out += ": ";
  out += msg;
  return out;
}

}  // namespace qcc
