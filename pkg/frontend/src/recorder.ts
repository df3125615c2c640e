// Session recorder: every UI action appends its script-grammar line, so the
// recorded log replays through the CLI to the same export.

const VERB_ARGS: Record<string, readonly string[]> = {
    load: ["app"],
    select: ["component"],
    deselect: ["component"],
    extendLayout: ["directions", "scope"],
    extendParent: [],
    extendTask: [],
    extendFunctionality: [],
    suggest: ["mode"],
    extract: ["target", "name"],
    place: ["screen", "subject", "relation", "anchor"],
    export: [],
};

function quote(value: string): string {
    if (
        value !== "" &&
        !/\s/.test(value) &&
        !value.includes('"') &&
        !value.includes("'") &&
        !value.includes("#")
    ) {
        return value;
    }
    const escaped = value.replace(/\\/g, "\\\\").replace(/"/g, '\\"');
    return `"${escaped}"`;
}

export function formatCommand(verb: string, args: Record<string, string> = {}): string {
    const order = VERB_ARGS[verb];
    if (order === undefined) throw new Error(`unknown command ${verb}`);
    const parts = [verb];
    for (const key of order) {
        const value = args[key];
        if (value !== undefined) parts.push(`${key}=${quote(value)}`);
    }
    return parts.join(" ");
}

export class SessionRecorder {
    readonly lines: string[] = [];

    record(verb: string, args: Record<string, string> = {}): void {
        this.lines.push(formatCommand(verb, args));
    }

    text(): string {
        return this.lines.map((line) => line + "\n").join("");
    }
}
