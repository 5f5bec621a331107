#include <cctype>
#include <cerrno>
#include <chrono>
#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>

#include <fcntl.h>
#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

#include "ltlfix/analysis.hpp"
#include "ltlfix/harness.hpp"

namespace ltlfix::analysis {

namespace {

std::string shellQuote(const std::string& s) {
    std::string out = "'";
    for (char c : s) {
        if (c == '\'') out += "'\\''";
        else out += c;
    }
    out += "'";
    return out;
}

void replaceAll(std::string& text, const std::string& what, const std::string& with) {
    size_t pos = 0;
    while ((pos = text.find(what, pos)) != std::string::npos) {
        text.replace(pos, what.size(), with);
        pos += with.size();
    }
}

std::string joinComma(const std::vector<std::string>& names) {
    std::string out;
    for (const auto& n : names) {
        if (!out.empty()) out += ',';
        out += n;
    }
    return out;
}

struct RunResult {
    bool timedOut = false;
    bool spawnFailed = false;
    int exitCode = -1;
    std::string output;
};

RunResult runWithTimeout(const std::string& command, int timeoutSeconds) {
    RunResult result;
    int fds[2];
    if (pipe(fds) != 0) {
        result.spawnFailed = true;
        return result;
    }
    pid_t pid = fork();
    if (pid < 0) {
        close(fds[0]);
        close(fds[1]);
        result.spawnFailed = true;
        return result;
    }
    if (pid == 0) {
        // child: stdout+stderr into the pipe, own process group for cleanup
        setpgid(0, 0);
        dup2(fds[1], STDOUT_FILENO);
        dup2(fds[1], STDERR_FILENO);
        close(fds[0]);
        close(fds[1]);
        execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
        _exit(127);
    }
    close(fds[1]);
    auto deadline = std::chrono::steady_clock::now() + std::chrono::seconds(timeoutSeconds);
    char buf[4096];
    bool open = true;
    while (open) {
        auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
                        deadline - std::chrono::steady_clock::now())
                        .count();
        if (left <= 0) {
            result.timedOut = true;
            break;
        }
        struct pollfd pfd{fds[0], POLLIN, 0};
        int rc = poll(&pfd, 1, static_cast<int>(std::min<long long>(left, 1000)));
        if (rc < 0 && errno != EINTR) break;
        if (rc > 0) {
            ssize_t got = read(fds[0], buf, sizeof(buf));
            if (got <= 0) open = false;
            else result.output.append(buf, static_cast<size_t>(got));
        }
    }
    close(fds[0]);
    if (result.timedOut) {
        kill(-pid, SIGKILL);
        kill(pid, SIGKILL);
    }
    int status = 0;
    waitpid(pid, &status, 0);
    if (WIFEXITED(status)) result.exitCode = WEXITSTATUS(status);
    return result;
}

} // namespace

RealizabilityVerdict externalRealizability(const Spec& s, const std::string& commandTemplate,
                                           int timeoutSeconds) {
    std::string command = commandTemplate;
    std::string tempFile;
    if (command.find("{file}") != std::string::npos) {
        char pattern[] = "/tmp/ltlfix-spec-XXXXXX";
        int fd = mkstemp(pattern);
        if (fd < 0) return RealizabilityVerdict::unknown("backend-failure: mkstemp failed");
        tempFile = pattern;
        std::string text = harness::specToText(s);
        ssize_t written = write(fd, text.data(), text.size());
        close(fd);
        if (written != static_cast<ssize_t>(text.size())) {
            unlink(tempFile.c_str());
            return RealizabilityVerdict::unknown("backend-failure: temp file write failed");
        }
        replaceAll(command, "{file}", shellQuote(tempFile));
    }
    replaceAll(command, "{formula}", shellQuote(print(s.implicationFormula())));
    replaceAll(command, "{ins}", shellQuote(joinComma(s.inputs)));
    replaceAll(command, "{outs}", shellQuote(joinComma(s.outputs)));

    RunResult run = runWithTimeout(command, timeoutSeconds);
    if (!tempFile.empty()) unlink(tempFile.c_str());

    if (run.spawnFailed) return RealizabilityVerdict::unknown("backend-failure: spawn failed");
    if (run.timedOut) return RealizabilityVerdict::unknown("timeout");
    if (run.exitCode != 0) {
        return RealizabilityVerdict::unknown("backend-failure: exit code " +
                                             std::to_string(run.exitCode));
    }
    std::string upper = run.output;
    for (char& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    // UNREALIZABLE contains REALIZABLE, so test it first.
    if (upper.find("UNREALIZABLE") != std::string::npos) {
        return RealizabilityVerdict::unrealizable();
    }
    if (upper.find("REALIZABLE") != std::string::npos) {
        return RealizabilityVerdict::realizable();
    }
    return RealizabilityVerdict::unknown("backend-failure: no verdict token in output");
}

} // namespace ltlfix::analysis
