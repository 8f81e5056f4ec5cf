//! Limit machines and the stabilization runner.

use serde::Serialize;

/// One step of a limit learner.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step<G> {
    Emit(G),
    /// Work done, no guess written.
    Silent,
    /// The learner has nothing left to do.
    Exhausted,
}

/// A machine that writes guesses, converging in the limit.
pub trait LimitLearner {
    type Guess: Clone + PartialEq;

    fn step(&mut self) -> Step<Self::Guess>;
}

/// Wraps an iterator of guesses as a learner.
pub struct GuessStream<I>(pub I);

impl<I: Iterator> LimitLearner for GuessStream<I>
where
    I::Item: Clone + PartialEq,
{
    type Guess = I::Item;

    fn step(&mut self) -> Step<I::Item> {
        match self.0.next() {
            Some(g) => Step::Emit(g),
            None => Step::Exhausted,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GuessTrace<G> {
    pub guesses: Vec<G>,
    pub mind_changes: u64,
    /// Position in `guesses` where the final run of equal guesses starts.
    pub stabilized_at: Option<u64>,
    pub converged: bool,
    /// Learner steps taken, silent ones included.
    pub steps: u64,
}

impl<G: Clone + PartialEq> GuessTrace<G> {
    pub fn final_guess(&self) -> Option<&G> {
        if self.converged {
            self.guesses.last()
        } else {
            None
        }
    }

    /// Per guess: whether it differs from the previous one.
    pub fn mind_change_flags(&self) -> Vec<bool> {
        let mut flags = vec![false; self.guesses.len()];
        for k in 1..self.guesses.len() {
            flags[k] = self.guesses[k] != self.guesses[k - 1];
        }
        flags
    }
}

/// Drives `learner` until `stability_window` equal guesses in a row appear,
/// the learner is exhausted, or `max_steps` steps have been taken.
pub fn run_to_limit<L: LimitLearner>(
    learner: &mut L,
    stability_window: u64,
    max_steps: u64,
) -> GuessTrace<L::Guess> {
    let stability_window = stability_window.max(1);
    let mut guesses: Vec<L::Guess> = Vec::new();
    let mut mind_changes = 0;
    let mut run_start = 0u64;
    let mut steps = 0;
    let mut converged = false;
    while steps < max_steps {
        steps += 1;
        match learner.step() {
            Step::Emit(g) => {
                if let Some(last) = guesses.last() {
                    if *last != g {
                        mind_changes += 1;
                        run_start = guesses.len() as u64;
                    }
                }
                guesses.push(g);
                if guesses.len() as u64 - run_start >= stability_window {
                    converged = true;
                    break;
                }
            }
            Step::Silent => {}
            Step::Exhausted => break,
        }
    }
    GuessTrace {
        stabilized_at: converged.then_some(run_start),
        guesses,
        mind_changes,
        converged,
        steps,
    }
}
