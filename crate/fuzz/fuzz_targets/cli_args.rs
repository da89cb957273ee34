#![no_main]

use libfuzzer_sys::fuzz_target;
use qclosed::leftmost::parse_missing;
use qclosed::{Quiver, Word};
use qclosed_cli::{parse_args, resolve_quiver, Command};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    // Arguments are separated by NUL bytes so they may contain spaces.
    let args = std::iter::once("qclosed").chain(text.split('\0'));
    let Ok(cli) = parse_args(args) else {
        return;
    };
    // Inline JSON and built-in names only; never touch the filesystem.
    if cli.quiver.trim_start().starts_with('{') {
        let _ = resolve_quiver(&cli.quiver);
    } else {
        let _ = Quiver::builtin(&cli.quiver);
    }
    match &cli.command {
        Command::W2cat { word }
        | Command::Ideal { word }
        | Command::Sorting { word }
        | Command::VerifyAntimatroid { word } => {
            let _ = Word::parse(word);
        }
        Command::Cat2w { missing } => {
            let _ = parse_missing(missing);
        }
        Command::Verify { suite, .. } => {
            let _ = suite.parse::<qclosed::verify::Suite>();
        }
        Command::Table | Command::VerifyLe { .. } => {}
    }
});
