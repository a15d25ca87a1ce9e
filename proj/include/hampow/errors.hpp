// Copyright 2026 The hampow Authors
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

#ifndef HAMPOW_ERRORS_HPP
#define HAMPOW_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hampow {

/// A caller violated an operation's stated precondition.
class PreconditionError : public std::invalid_argument
{
    public:
        using std::invalid_argument::invalid_argument;
};

/// An edge pair handed to build_graph was out of range or a loop.
class InvalidEdgeError : public PreconditionError
{
    private:
        std::size_t _index;

    public:
        InvalidEdgeError(std::size_t index, const std::string & what) :
            PreconditionError(what + " (edge #" + std::to_string(index) + ")"),
            _index(index)
        {
        }

        auto index() const -> std::size_t { return _index; }
};

}

#endif
