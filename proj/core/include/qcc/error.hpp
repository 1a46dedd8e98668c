// Copyright 2026 The qcc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace qcc {

struct SrcPos {
  int line = 0;
  int col = 0;

  bool valid() const { return line > 0; }
  std::string str() const;
};

enum class ErrorKind {
  Syntax,
  UnknownGate,
  UndefinedModule,
  UndefinedName,
  ArityMismatch,
  TypeMismatch,
  Recursion,
  NonConstantControl,
  BlowupLimit,
  StepLimit,
  BudgetExceeded,
  Overlap,
  Width,
  ControlOverlap,
  NoBorrowAvailable,
  WidthMismatch,
  TooManyQubits,
  Semantic,
  Io,
};

const char* error_kind_name(ErrorKind k);

// Every diagnostic raised by the library carries a kind and, when known, a
// source position. what() renders "<origin>:<line>:<col>: <Kind>: <msg>".
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string msg, SrcPos pos = {}, std::string origin = {});

  ErrorKind kind() const { return kind_; }
  const SrcPos& pos() const { return pos_; }
  const std::string& message() const { return msg_; }
  const std::string& origin() const { return origin_; }

 private:
  static std::string render(ErrorKind k, const std::string& msg, SrcPos pos,
                            const std::string& origin);
  ErrorKind kind_;
  std::string msg_;
  SrcPos pos_;
  std::string origin_;
};

}  // namespace qcc
