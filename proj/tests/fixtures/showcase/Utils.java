class Utils { Object parseArray(java.sql.ResultSet rs, int index) throws java.sql.SQLException { try { return rs.getArray(index).getArray(); } catch (Exception fatal) {
    log.error("Cannot parse Postgres array: " + rs.getString(index));
    log.error(fatal);
    return null;
}
}

    private static final JooqLogger log = JooqLogger.getLogger(Utils.class);
}
