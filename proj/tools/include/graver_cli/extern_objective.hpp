#pragma once

#include "graver/optimizer.hpp"

#include <cstdio>
#include <mutex>
#include <string>
#include <sys/types.h>

namespace graver::cli {

/// Objective evaluated by a child process: one line "x1 x2 .. xn" written to
/// its stdin, one number read back from its stdout. Started on first use.
class ExternObjective : public Objective {
public:
    ExternObjective(std::string command, std::size_t n);
    ~ExternObjective() override;
    ExternObjective(const ExternObjective&) = delete;
    ExternObjective& operator=(const ExternObjective&) = delete;

    double operator()(const IntVector& x) const override;
    bool thread_safe() const override { return false; }
    std::string describe() const override { return "extern " + command_; }

private:
    void start() const;

    std::string command_;
    std::size_t n_;
    mutable std::mutex mu_;
    mutable pid_t pid_ = -1;
    mutable std::FILE* to_child_ = nullptr;
    mutable std::FILE* from_child_ = nullptr;
};

}  // namespace graver::cli
