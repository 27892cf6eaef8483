#ifndef AMGC_ERRORS_HPP
#define AMGC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace amgc {

/// Exit codes reported by the CLI, one per error class.
enum class ExitCode : int {
    ok = 0,
    usage = 2,
    parse_error = 3,
    io_error = 4,
    digest_mismatch = 5,
    bad_magic = 6,
    bad_version = 7,
    corrupt_archive = 8,
    truncated = 9,
    bad_config = 10,
};

struct Error : std::runtime_error {
    Error(ExitCode code, const std::string& msg) : std::runtime_error(msg), exit_code(code) {}
    ExitCode exit_code;
};

/// Malformed FASTQ/FASTA input.
struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(ExitCode::parse_error, msg) {}
};

struct IoError : Error {
    explicit IoError(const std::string& msg) : Error(ExitCode::io_error, msg) {}
};

/// Archive was produced against a different reference sequence.
struct DigestMismatchError : Error {
    explicit DigestMismatchError(const std::string& msg) : Error(ExitCode::digest_mismatch, msg) {}
};

struct BadMagicError : Error {
    explicit BadMagicError(const std::string& msg) : Error(ExitCode::bad_magic, msg) {}
};

struct BadVersionError : Error {
    explicit BadVersionError(const std::string& msg) : Error(ExitCode::bad_version, msg) {}
};

/// Checksum failure or structurally inconsistent archive contents.
struct CorruptArchiveError : Error {
    explicit CorruptArchiveError(const std::string& msg) : Error(ExitCode::corrupt_archive, msg) {}
};

/// Input ended before a decoder finished.
struct TruncatedError : Error {
    explicit TruncatedError(const std::string& msg) : Error(ExitCode::truncated, msg) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error(ExitCode::bad_config, msg) {}
};

}  // namespace amgc

#endif
