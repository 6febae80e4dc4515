//! Run traces as JSON lines.

use serde::Serialize;

/// One engine event. Signatures, monomials and multipliers are in text form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "event", rename_all = "snake_case")]
pub enum TraceEvent {
    Pop {
        signature: String,
    },
    Select {
        signature: String,
        node: usize,
        multiplier: String,
        lm: String,
    },
    Reduce {
        signature: String,
        lm: String,
        steps: usize,
    },
    Insert {
        signature: String,
        node: usize,
        parent: usize,
        multiplier: String,
        lm: String,
        steps: usize,
    },
    Skip {
        signature: String,
        node: usize,
    },
    QueueAdd {
        signature: String,
        source: (usize, usize),
    },
    QueuePrune {
        signature: String,
    },
}

/// One JSON object per line, in event order.
pub fn to_json_lines(events: &[TraceEvent]) -> String {
    let mut out = String::new();
    for e in events {
        out.push_str(&serde_json::to_string(e).expect("trace events serialize"));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn events_are_tagged() {
        let e = [
            TraceEvent::Pop {
                signature: "x*e_1".into(),
            },
            TraceEvent::QueueAdd {
                signature: "e_2".into(),
                source: (1, 2),
            },
        ];
        assert_eq!(
            to_json_lines(&e),
            "{\"event\":\"pop\",\"signature\":\"x*e_1\"}\n\
             {\"event\":\"queue_add\",\"signature\":\"e_2\",\"source\":[1,2]}\n"
        );
    }
}
