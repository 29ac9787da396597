//! Assemble, run and enumerate programs of the toy machine.
//!
//! `cargo run --example machine`

use ktlab::machine::{assemble, compose_programs, copy_program, disassemble, enumerate_programs, print_program_for, run, MachineSpec};
use ktlab::BitString;

fn main() {
    let spec = MachineSpec::measure();
    println!("machine {}: {}", spec.version_tag, spec.to_json());

    let p = assemble("out 1; rep 3 { out 0 }; out 1").unwrap();
    let r = run(&p, &BitString::new(), 100);
    println!("{} ({} bits) -> {} in {} steps", disassemble(&p), p.len(), r.output, r.steps);

    let w = BitString::parse01("1011001").unwrap();
    let printer = print_program_for(&w);
    println!("printer for {w}: {} bits, output {}", printer.len(), run(&printer, &BitString::new(), 64).output);

    // Stage one copies the input, stage two appends a bit to whatever it receives.
    let twice = compose_programs(&copy_program(), &assemble("cpy; out 0").unwrap());
    let input = BitString::parse01("110").unwrap();
    println!("composed program on {input}: {}", run(&twice, &input, 64).output);

    // A run that has not halted within t steps is reported as timed out.
    let long = assemble("rep 50 { out 1 }").unwrap();
    println!("rep 50 with t = 10: {:?}", run(&long, &BitString::new(), 10).status);

    println!("the first programs in length-lexicographic order:");
    for (k, e) in enumerate_programs(3).take(8).enumerate() {
        let r = run(&e, &BitString::new(), 4);
        println!("  #{k}: {:>3} -> {:?} output {:?}", e.to_string(), r.status, r.output.to_string());
    }
}
