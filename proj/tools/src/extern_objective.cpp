#include "graver_cli/extern_objective.hpp"

#include <cerrno>
#include <csignal>
#include <charconv>
#include <cstring>
#include <stdexcept>
#include <sys/wait.h>
#include <unistd.h>

namespace graver::cli {

ExternObjective::ExternObjective(std::string command, std::size_t n) : command_(std::move(command)), n_(n) {}

ExternObjective::~ExternObjective() {
    if (to_child_) std::fclose(to_child_);
    if (from_child_) std::fclose(from_child_);
    if (pid_ > 0) {
        int status = 0;
        waitpid(pid_, &status, 0);
    }
}

void ExternObjective::start() const {
    // A child that exits early should surface as a write error, not kill us.
    std::signal(SIGPIPE, SIG_IGN);
    int in_pipe[2], out_pipe[2];
    if (pipe(in_pipe) != 0 || pipe(out_pipe) != 0)
        throw std::runtime_error("extern objective: pipe failed: " + std::string(std::strerror(errno)));
    const pid_t pid = fork();
    if (pid < 0) throw std::runtime_error("extern objective: fork failed: " + std::string(std::strerror(errno)));
    if (pid == 0) {
        dup2(in_pipe[0], STDIN_FILENO);
        dup2(out_pipe[1], STDOUT_FILENO);
        close(in_pipe[0]);
        close(in_pipe[1]);
        close(out_pipe[0]);
        close(out_pipe[1]);
        execl("/bin/sh", "sh", "-c", command_.c_str(), static_cast<char*>(nullptr));
        _exit(127);
    }
    close(in_pipe[0]);
    close(out_pipe[1]);
    pid_ = pid;
    to_child_ = fdopen(in_pipe[1], "w");
    from_child_ = fdopen(out_pipe[0], "r");
    if (!to_child_ || !from_child_) throw std::runtime_error("extern objective: fdopen failed");
}

double ExternObjective::operator()(const IntVector& x) const {
    if (x.size() != n_) throw DimensionError("extern objective: dimension mismatch");
    std::lock_guard lock(mu_);
    if (pid_ < 0) start();
    std::string line;
    for (std::size_t i = 0; i < x.size(); ++i) line += (i ? " " : "") + std::to_string(x[i]);
    line += '\n';
    if (std::fputs(line.c_str(), to_child_) < 0 || std::fflush(to_child_) != 0)
        throw std::runtime_error("extern objective: '" + command_ + "' stopped reading input");

    char buf[256];
    if (!std::fgets(buf, sizeof buf, from_child_))
        throw std::runtime_error("extern objective: '" + command_ + "' closed its output");
    const char* b = buf;
    while (*b == ' ' || *b == '\t') ++b;
    const char* e = b + std::strcspn(b, " \t\r\n");
    double v = 0;
    auto [p, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || p != e)
        throw std::runtime_error("extern objective: '" + command_ + "' returned a non-number: " + std::string(b, e));
    return v;
}

}  // namespace graver::cli
