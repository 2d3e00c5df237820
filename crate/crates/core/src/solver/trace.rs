use std::fmt::Write as _;

use crate::stability::Matching;

/// Direction the scan pointer moved after a step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Jump {
    Up,
    Down,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Action {
    /// The man was stable; the pointer moves down.
    Skip,
    /// The man proposed to `woman` and she accepted. `previous_woman` is the
    /// partner he dumped, `previous_man` the partner she dumped.
    Propose {
        woman: usize,
        previous_woman: Option<usize>,
        previous_man: Option<usize>,
        jump: Jump,
    },
}

/// One scan of the solver.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TraceEvent {
    /// 1-based step number.
    pub step: usize,
    /// The scanned man.
    pub man: usize,
    pub action: Action,
    /// Topmost possibly unstable man after the step.
    pub top: usize,
}

impl TraceEvent {
    pub fn jump(&self) -> Jump {
        match self.action {
            Action::Skip => Jump::Down,
            Action::Propose { jump, .. } => jump,
        }
    }

    /// `scan m2, add (m2,w3), remove (m1,w3)`
    pub fn describe(&self) -> String {
        let i = self.man;
        let mut s = format!("scan m{i}");
        if let Action::Propose { woman, previous_woman, previous_man, .. } = self.action {
            write!(s, ", add (m{i},w{woman})").unwrap();
            if let Some(w) = previous_woman {
                write!(s, ", remove (m{i},w{w})").unwrap();
            }
            if let Some(m) = previous_man {
                write!(s, ", remove (m{m},w{woman})").unwrap();
            }
        }
        s
    }
}

/// Ordered record of a run. Stores only the per-step deltas; matching
/// snapshots are rebuilt by [`Trace::replay`].
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Trace {
    n_men: usize,
    n_women: usize,
    events: Vec<TraceEvent>,
}

impl Trace {
    pub fn new(n_men: usize, n_women: usize) -> Self {
        Trace { n_men, n_women, events: Vec::new() }
    }

    pub fn push(&mut self, event: TraceEvent) {
        self.events.push(event);
    }

    pub fn events(&self) -> &[TraceEvent] {
        &self.events
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn n_men(&self) -> usize {
        self.n_men
    }

    pub fn n_women(&self) -> usize {
        self.n_women
    }

    /// Calls `f(event, before, after)` for each event in order, where `before`
    /// and `after` are the matchings around that step.
    pub fn replay(&self, mut f: impl FnMut(&TraceEvent, &Matching, &Matching)) {
        let mut before = Matching::new(self.n_men, self.n_women);
        let mut after = before.clone();
        for ev in &self.events {
            if let Action::Propose { woman, .. } = ev.action {
                after.remove_man(ev.man);
                after.remove_woman(woman);
                after.insert(ev.man, woman);
            }
            f(ev, &before, &after);
            if let Action::Propose { woman, .. } = ev.action {
                before.remove_man(ev.man);
                before.remove_woman(woman);
                before.insert(ev.man, woman);
            }
        }
    }

    /// Matching at the end of every step.
    pub fn snapshots(&self) -> Vec<Matching> {
        let mut out = Vec::with_capacity(self.events.len());
        self.replay(|_, _, after| out.push(after.clone()));
        out
    }

    /// Tab-separated table `step  process  M  S`, a header line, a step 0 row
    /// for the initial state, then one row per scan.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("step\tprocess\tM\tS\n");
        let initial = Matching::new(self.n_men, self.n_women);
        writeln!(out, "0\t\t{}\t{}", labelled(&initial), men_from(1, self.n_men)).unwrap();
        self.replay(|ev, _, after| {
            writeln!(
                out,
                "{}\t{}\t{}\t{}",
                ev.step,
                ev.describe(),
                labelled(after),
                men_from(ev.top, self.n_men)
            )
            .unwrap();
        });
        out
    }
}

/// `{(m1,w1),(m2,w3)}`, or `{}`.
pub(crate) fn labelled(m: &Matching) -> String {
    let body: Vec<String> = m.pairs().map(|(i, j)| format!("(m{i},w{j})")).collect();
    format!("{{{}}}", body.join(","))
}

/// `{m_top,...,m_n}`, or `{}`.
fn men_from(top: usize, n: usize) -> String {
    let body: Vec<String> = (top..=n).map(|i| format!("m{i}")).collect();
    format!("{{{}}}", body.join(","))
}
