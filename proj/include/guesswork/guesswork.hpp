// Copyright 2026 The guesswork authors.
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

#ifndef GUESSWORK_GUESSWORK_HPP
#define GUESSWORK_GUESSWORK_HPP

#include <guesswork/closed_form.hpp>
#include <guesswork/ensemble.hpp>
#include <guesswork/errors.hpp>
#include <guesswork/functionals.hpp>
#include <guesswork/io.hpp>
#include <guesswork/linalg.hpp>
#include <guesswork/solver.hpp>

#endif  // GUESSWORK_GUESSWORK_HPP
