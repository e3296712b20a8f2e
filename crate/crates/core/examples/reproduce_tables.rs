//! Recomputes every homology table and compares it with its closed form.
//!
//! `cargo run --release --example reproduce_tables`

fn main() -> torcfg::Result<()> {
    let mut all = true;
    for (name, m_max, n_max) in [
        ("lemma-annulus", 12, 0),
        ("prop-b1", 8, 0),
        ("prop-b2", 0, 4),
        ("prop-hom", 0, 5),
        ("thm15", 6, 4),
    ] {
        let table = torcfg::reproduce::by_name(name, m_max, n_max)?;
        all &= table.pass;
        println!("{}", table.render_text());
    }
    println!("{}", if all { "all tables PASS" } else { "some table FAILED" });
    Ok(())
}
