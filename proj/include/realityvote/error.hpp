#pragma once

#include <stdexcept>
#include <string>

namespace realityvote {

enum class Errc {
    // profile construction
    MixedBallotKind,
    NoActiveHonest,
    SybilWithoutBallot,
    PassiveSybil,
    InvalidDomain,
    InvalidBallot,
    // rules
    EmptyTargetSet,
    NonRankingBallot,
    EmptyElectorate,
    EmptyEntries,
    MechanismMismatch,
    // proxy
    NoProxyAvailable,
    SampleTooLarge,
    // guarantees
    DegenerateParams,
    // verifier
    BudgetExceeded,
    MissingPrivateBallots,
    UnrealizableShape,
    RegimeMismatch,
    // interchange
    ParseError,
    InvalidArgument,
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::MixedBallotKind: return "MixedBallotKind";
        case Errc::NoActiveHonest: return "NoActiveHonest";
        case Errc::SybilWithoutBallot: return "SybilWithoutBallot";
        case Errc::PassiveSybil: return "PassiveSybil";
        case Errc::InvalidDomain: return "InvalidDomain";
        case Errc::InvalidBallot: return "InvalidBallot";
        case Errc::EmptyTargetSet: return "EmptyTargetSet";
        case Errc::NonRankingBallot: return "NonRankingBallot";
        case Errc::EmptyElectorate: return "EmptyElectorate";
        case Errc::EmptyEntries: return "EmptyEntries";
        case Errc::MechanismMismatch: return "MechanismMismatch";
        case Errc::NoProxyAvailable: return "NoProxyAvailable";
        case Errc::SampleTooLarge: return "SampleTooLarge";
        case Errc::DegenerateParams: return "DegenerateParams";
        case Errc::BudgetExceeded: return "BudgetExceeded";
        case Errc::MissingPrivateBallots: return "MissingPrivateBallots";
        case Errc::UnrealizableShape: return "UnrealizableShape";
        case Errc::RegimeMismatch: return "RegimeMismatch";
        case Errc::ParseError: return "ParseError";
        case Errc::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace realityvote
