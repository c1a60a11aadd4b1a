/*
 * Copyright 2026 The atlas authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace atlas {

// Error categories map to the CLI exit codes:
//   ValidationError -> 2, FetchError -> 3, DataIntegrityError -> 4.

class ValidationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class FetchError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Cache miss while the client is in replay mode. Replay never touches the
// network, so this is the only way an offline run can fail to produce data.
class ReplayMissError : public FetchError {
public:
  using FetchError::FetchError;
};

class DataIntegrityError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A party pair with an empty work union has no defined distance. Callers
// decide whether to exclude the pair or abort the whole matrix.
class UndefinedDistanceError : public DataIntegrityError {
public:
  using DataIntegrityError::DataIntegrityError;
};

// Snapshot corruption, hash mismatch or schema version mismatch.
class StoreError : public DataIntegrityError {
public:
  using DataIntegrityError::DataIntegrityError;
};

}  // namespace atlas
