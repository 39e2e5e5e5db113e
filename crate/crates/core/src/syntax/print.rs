use super::Formula;

// Binding strength of the printed form; higher binds tighter.
const OR: u8 = 1;
const AND: u8 = 2;
const UNARY: u8 = 3;

fn level(f: &Formula) -> u8 {
    match f {
        Formula::Or(..) => OR,
        Formula::And(..) => AND,
        _ => UNARY,
    }
}

pub(super) fn print(f: &Formula) -> String {
    let mut out = String::new();
    write(f, 0, &mut out);
    out
}

fn write(f: &Formula, min: u8, out: &mut String) {
    let parens = level(f) < min;
    if parens {
        out.push('(');
    }
    match f {
        Formula::Top => out.push('T'),
        Formula::Not(a) if **a == Formula::Top => out.push('F'),
        Formula::Prop(p) => out.push_str(p),
        Formula::Not(a) => {
            out.push('~');
            write(a, UNARY, out);
        }
        Formula::Diamond(m, a) => {
            out.push('<');
            out.push_str(m.name());
            out.push('>');
            write(a, UNARY, out);
        }
        Formula::Box(m, a) => {
            out.push('[');
            out.push_str(m.name());
            out.push(']');
            write(a, UNARY, out);
        }
        // Both chains associate to the left when parsed, so only the right
        // operand needs to bind strictly tighter.
        Formula::And(a, b) => {
            write(a, AND, out);
            out.push_str(" & ");
            write(b, UNARY, out);
        }
        Formula::Or(a, b) => {
            write(a, OR, out);
            out.push_str(" | ");
            write(b, AND, out);
        }
    }
    if parens {
        out.push(')');
    }
}
